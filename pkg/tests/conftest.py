import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quotlab.constructors import parse_ring
from quotlab.corpus import builtin_corpus
from quotlab.quotients import build_qmax


@lru_cache(maxsize=None)
def ring(expr: str):
    return parse_ring(expr)


@lru_cache(maxsize=None)
def qmax(expr: str):
    return build_qmax(ring(expr))


CORPUS = builtin_corpus()
CORPUS_IDS = [e.name for e in CORPUS]


@pytest.fixture(params=CORPUS, ids=CORPUS_IDS)
def corpus_entry(request):
    return request.param


