"""Shared enumeration suites and the acceptance result registry."""

from functools import lru_cache

from rwsdual.search import candidates, enumerate_regular

RESULTS = {}


@lru_cache(maxsize=None)
def regular_suite(h_max):
    return tuple(enumerate_regular(h_max))


@lru_cache(maxsize=None)
def candidate_suite(h_max):
    return tuple(w for h in range(2, h_max + 1) for w in candidates(h))


def record(key, title, ok, detail=""):
    RESULTS[key] = (title, ok, detail)
    line = f"[{'PASS' if ok else 'FAIL'}] {key}. {title}" + (f" -- {detail}" if detail else "")
    print(line)
    return line
