# harness/__init__.py
from .corpus import corpus_counter, corpus_spawn, corpus_splay
from .bounds import check_bound, verify
from .splay_check import check_splay
from .fuzz import fuzz_metatheory
