# harness/corpus.py
"""Example programs: the binary counter, spawn, and splay-tree split.

The counter lives in ``programs/counter.la``. Spawn and split are assembled
here with small builder helpers because split is large; the helpers also
build the inputs the harness feeds to these programs.
"""
from pathlib import Path
from typing import Iterable, List, Sequence

from data_models.credits import CreditTerm, ZERO_CREDIT
from data_models.extended import INF
from data_models.la_syntax import (
    NAT_T, UNIT_T, App, Case, Create, Emp, Fst, LATerm, LAType, Lam, LetPair, NatRec, Node, Num,
    Pack, Pair, Prim, Save, Snd, Spend, Succ, TBang, TExists, TLolli, TSum, TTensor, TTree, Tick,
    Transfer, TreeRec, UnitVal, Unpack, Var, Inl, Inr, bit_list, list_literal, tree_view_type,
)
from data_models.program import Definition, ProgramFile
from utils.la_parser import load_program

PROGRAMS_DIR = Path(__file__).resolve().parent.parent / "programs"
COUNTER_PATH = PROGRAMS_DIR / "counter.la"

# ∃α.!^∞_α ℕ: a key that can be compared any number of times, carrying α credits
SPLAY_KEY_T = TExists("a", TBang(INF, CreditTerm.var("a"), NAT_T))
SPLAY_TREE_T = TTree(SPLAY_KEY_T)
PIVOT_T = TBang(INF, ZERO_CREDIT, NAT_T)
SPLIT_RESULT_T = TTensor(SPLAY_TREE_T, SPLAY_TREE_T)
SPLIT_T = TLolli(TTensor(NAT_T, SPLAY_TREE_T), SPLIT_RESULT_T)
BANK_T = TExists("a", TBang(1, CreditTerm.var("a"), UNIT_T))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def app(fn: LATerm, *args: LATerm) -> LATerm:
    out = fn
    for arg in args:
        out = App(out, arg)
    return out


def step(var: str, ty: LAType, body: LATerm) -> LATerm:
    """A recursor step: a closed function saved for unlimited reuse."""
    return Save(INF, ZERO_CREDIT, Lam(var, ty, body))


def thunk(body: LATerm) -> LATerm:
    return Lam("_", UNIT_T, body)


def credit(*names: str) -> CreditTerm:
    return CreditTerm.make({n: 1 for n in names})


def nat_input(n: int) -> LATerm:
    return Num(n)


def bits_input(bits: Sequence[int]) -> LATerm:
    return bit_list(bits)


# ---------------------------------------------------------------------------
# counter
# ---------------------------------------------------------------------------

def corpus_counter() -> ProgramFile:
    """inc, set and plain_inc as written in ``programs/counter.la``."""
    return load_program(COUNTER_PATH)


# ---------------------------------------------------------------------------
# spawn: ℕ ⊸ ∃α.!^1_α 1 with α = n, built by looping create[1]
# ---------------------------------------------------------------------------

def spawn_term() -> LATerm:
    grown = CreditTerm.make({"a": 1}, 1)
    body = Unpack("a", "x", app(Var("r"), UnitVal()),
                  Transfer("y", Var("x"),
                           Create(CreditTerm.constant(1),
                                  Pack(grown, BANK_T, Save(1, grown, Var("y"))))))
    loop = step("q", TTensor(NAT_T, TLolli(UNIT_T, BANK_T)), LetPair("m", "r", Var("q"), body))
    base = thunk(Pack(ZERO_CREDIT, BANK_T, Save(1, ZERO_CREDIT, UnitVal())))
    return Lam("n", NAT_T, NatRec(Var("n"), base, loop))


def corpus_spawn() -> ProgramFile:
    return ProgramFile(definitions=[
        Definition(name="spawn", type=TLolli(NAT_T, BANK_T), term=spawn_term()),
    ])


# ---------------------------------------------------------------------------
# promote: ℕ ⊸ !^∞_0 ℕ, so the pivot can be compared at every level
# ---------------------------------------------------------------------------

def promote_term() -> LATerm:
    loop = step("q", TTensor(NAT_T, TLolli(UNIT_T, PIVOT_T)),
                LetPair("m", "r", Var("q"),
                        Transfer("y", app(Var("r"), UnitVal()),
                                 Save(INF, ZERO_CREDIT, Succ(Var("y"))))))
    base = thunk(Save(INF, ZERO_CREDIT, Num(0)))
    return Lam("n", NAT_T, NatRec(Var("n"), base, loop))


# ---------------------------------------------------------------------------
# size: tree K ⊸ ℕ ⊗ tree K, reading the cached size and rebuilding the node
# ---------------------------------------------------------------------------

SIZE_RESULT_T = TTensor(NAT_T, SPLAY_TREE_T)


def _rebuild(view: str, tag: str) -> LATerm:
    """The subtree behind a treerec view, put back together unchanged."""
    lab, n, s1, s2 = f"lab{tag}", f"n{tag}", f"s{tag}1", f"s{tag}2"
    return LetPair(lab, f"r{tag}", Var(view),
                   LetPair(n, f"ss{tag}", Var(f"r{tag}"),
                           LetPair(s1, s2, Var(f"ss{tag}"),
                                   Node(Var(lab), Var(n), Fst(Var(s1)), Fst(Var(s2))))))


def _sized(label: str, n: str, left: LATerm, right: LATerm) -> LATerm:
    return LetPair("n1", "n2", Prim("dup", (Var(n),)),
                   Pair(Var("n1"), Node(Var(label), Var("n2"), left, right)))


def size_term() -> LATerm:
    view = tree_view_type(SPLAY_KEY_T, SIZE_RESULT_T)
    empty = Emp(SPLAY_KEY_T)
    leaf = step("v", TTensor(SPLAY_KEY_T, NAT_T),
                LetPair("x", "n", Var("v"), _sized("x", "n", empty, empty)))
    one_child = TTensor(SPLAY_KEY_T, TTensor(NAT_T, view))
    left_empty = step("v", one_child,
                      LetPair("x", "rest", Var("v"), LetPair("n", "w", Var("rest"),
                              _sized("x", "n", empty, _rebuild("w", "r")))))
    right_empty = step("v", one_child,
                       LetPair("x", "rest", Var("v"), LetPair("n", "w", Var("rest"),
                               _sized("x", "n", _rebuild("w", "l"), empty))))
    both = step("v", TTensor(SPLAY_KEY_T, TTensor(NAT_T, TTensor(view, view))),
                LetPair("x", "rest", Var("v"), LetPair("n", "ws", Var("rest"),
                        LetPair("wl", "wr", Var("ws"),
                                _sized("x", "n", _rebuild("wl", "l"), _rebuild("wr", "r"))))))
    body = TreeRec(Var("t"), thunk(Pair(Num(0), empty)), leaf, left_empty, right_empty, both)
    return Lam("t", SPLAY_TREE_T, body)


# ---------------------------------------------------------------------------
# split
# ---------------------------------------------------------------------------

SPLIT_STEP_T = TLolli(PIVOT_T, SPLIT_RESULT_T)
SPLIT_VIEW_T = tree_view_type(SPLAY_KEY_T, SPLIT_STEP_T)


def _open_key(label: str, alpha: str, key: str, body: LATerm) -> LATerm:
    """Unpack a node label: ``key`` is the reusable key, α credits go to the bank."""
    return Unpack(alpha, f"{key}_b", Var(label), Transfer(key, Var(f"{key}_b"), body))


def _repack(alpha: str, key: str) -> LATerm:
    return Pack(credit(alpha), SPLAY_KEY_T, Save(INF, credit(alpha), Var(key)))


def _at_least(key: str, tag: str, big: LATerm, small: LATerm) -> LATerm:
    """Branch on pivot ≤ key; the pivot copy is ``q``."""
    return Case(Prim("leq", (Var("q"), Var(key))), f"ge{tag}", big, f"lt{tag}", small)


def _recurse(sub: str) -> LATerm:
    return app(Snd(Var(sub)), Save(INF, ZERO_CREDIT, Var("q")))


def _fresh_node(key: str, left: LATerm, right: LATerm, tag: str) -> LATerm:
    """A node for ``key`` over new subtrees, with φ(size) freshly spawned credits."""
    nl, tl, nr, tr, m, m2, c, u = (f"{x}{tag}" for x in ("nl", "tl", "nr", "tr", "m", "mm", "c", "u"))
    size = Prim("add", (Num(1), Prim("add", (Var(nl), Var(nr)))))
    label = Pack(credit(c), SPLAY_KEY_T, Save(INF, credit(c), Var(key)))
    return LetPair(nl, tl, app(Var("size"), left),
                   LetPair(nr, tr, app(Var("size"), right),
                           LetPair(m, m2, Prim("dup", (size,)),
                                   Unpack(c, u, app(Var("spawn"), Prim("phi", (Var(m),))),
                                          Transfer(f"w{tag}", Var(u),
                                                   Node(label, Var(m2), Var(tl), Var(tr)))))))


def _destructure(view: str, tag: str, body: LATerm) -> LATerm:
    return LetPair(f"y{tag}", f"r{tag}", Var(view),
                   LetPair(f"ny{tag}", f"ss{tag}", Var(f"r{tag}"),
                           LetPair(f"a{tag}1", f"a{tag}2", Var(f"ss{tag}"), body)))


def _rotate_left_child(view: str, right_tree: LATerm) -> LATerm:
    """x ≥ pivot and x has a left child y (view ``view``)."""
    a11, a12 = "aL1", "aL2"
    # zig-zig: (small, N(y, big, N(x, a12, b)))
    zig_zig = LetPair("small", "big", _recurse(a11),
                      Spend(credit("a", "b"),
                            Pair(Var("small"),
                                 _fresh_node("ky", Var("big"),
                                             _fresh_node("kx", Fst(Var(a12)), right_tree, "1"), "2"))))
    # zig-zag (reconstructed): (N(y, a11, small), N(x, big, b))
    zig_zag = LetPair("small", "big", _recurse(a12),
                      Spend(credit("a", "b"),
                            Pair(_fresh_node("ky", Fst(Var(a11)), Var("small"), "3"),
                                 _fresh_node("kx", Var("big"), right_tree, "4"))))
    return _destructure(view, "L", _open_key("yL", "b", "ky", _at_least("ky", "y", zig_zig, zig_zag)))


def _rotate_right_child(view: str, left_tree: LATerm) -> LATerm:
    """x < pivot and x has a right child y; both branches reconstructed."""
    b1, b2 = "aR1", "aR2"
    # y ≥ pivot: (N(a, x, small), N(big, y, b2))
    zag_zig = LetPair("small", "big", _recurse(b1),
                      Spend(credit("a", "b"),
                            Pair(_fresh_node("kx", left_tree, Var("small"), "5"),
                                 _fresh_node("ky", Var("big"), Fst(Var(b2)), "6"))))
    # y < pivot: (N(N(a, x, b1), y, small), big)
    zag_zag = LetPair("small", "big", _recurse(b2),
                      Spend(credit("a", "b"),
                            Pair(_fresh_node("ky", _fresh_node("kx", left_tree, Fst(Var(b1)), "7"),
                                             Var("small"), "8"),
                                 Var("big"))))
    return _destructure(view, "R", _open_key("yR", "b", "ky", _at_least("ky", "y", zag_zig, zag_zag)))


def _split_branch(view_ty: LAType, destructure, body: LATerm) -> LATerm:
    inner = Lam("p", PIVOT_T, destructure(Transfer("q", Var("p"), Tick(_open_key("x", "a", "kx", body)))))
    return step("v", view_ty, inner)


def split_term() -> LATerm:
    empty = Emp(SPLAY_KEY_T)

    def same_node(left: LATerm, right: LATerm) -> LATerm:
        return Node(_repack("a", "kx"), Var("n"), left, right)

    leaf = _split_branch(
        TTensor(SPLAY_KEY_T, NAT_T),
        lambda body: LetPair("x", "n", Var("v"), body),
        _at_least("kx", "x", Pair(empty, same_node(empty, empty)), Pair(same_node(empty, empty), empty)))

    one_child = TTensor(SPLAY_KEY_T, TTensor(NAT_T, SPLIT_VIEW_T))

    def one_child_view(body: LATerm) -> LATerm:
        return LetPair("x", "rest", Var("v"), LetPair("n", "w", Var("rest"), body))

    # only a right child: x ≥ pivot keeps the whole tree on the big side
    left_empty = _split_branch(one_child, one_child_view, _at_least(
        "kx", "x",
        Pair(empty, same_node(empty, _rebuild("w", "z"))),
        _rotate_right_child("w", empty)))
    # only a left child: x < pivot keeps the whole tree on the small side
    right_empty = _split_branch(one_child, one_child_view, _at_least(
        "kx", "x",
        _rotate_left_child("w", empty),
        Pair(same_node(_rebuild("w", "z"), empty), empty)))

    def two_children_view(body: LATerm) -> LATerm:
        return LetPair("x", "rest", Var("v"), LetPair("n", "ws", Var("rest"),
                       LetPair("wl", "wr", Var("ws"), body)))

    both = _split_branch(
        TTensor(SPLAY_KEY_T, TTensor(NAT_T, TTensor(SPLIT_VIEW_T, SPLIT_VIEW_T))),
        two_children_view,
        _at_least("kx", "x",
                  _rotate_left_child("wl", _rebuild("wr", "z")),
                  _rotate_right_child("wr", _rebuild("wl", "z"))))

    base = thunk(Lam("p", PIVOT_T, Pair(empty, empty)))
    rec = TreeRec(Var("t"), base, leaf, left_empty, right_empty, both)
    body = LetPair("k", "t", Var("kt"), app(rec, app(Var("promote"), Var("k"))))
    return Lam("kt", TTensor(NAT_T, SPLAY_TREE_T), body)


def corpus_splay() -> ProgramFile:
    """spawn, promote, size and split; later definitions refer to earlier ones by name."""
    return ProgramFile(definitions=[
        Definition(name="spawn", type=TLolli(NAT_T, BANK_T), term=spawn_term()),
        Definition(name="promote", type=TLolli(NAT_T, PIVOT_T), term=promote_term()),
        Definition(name="size", type=TLolli(SPLAY_TREE_T, SIZE_RESULT_T), term=size_term()),
        Definition(name="split", type=SPLIT_T, term=split_term()),
    ])


def corpus_programs() -> List[ProgramFile]:
    return [corpus_counter(), corpus_spawn(), corpus_splay()]


def corpus_closed_terms() -> Iterable[LATerm]:
    """Closed applications of the corpus functions at a few inputs, for whole-corpus checks."""
    counter = corpus_counter()
    inc, set_, plain = counter.expand("inc"), counter.expand("set"), counter.expand("plain_inc")
    for bits in ([], [1], [1, 1, 0], [0, 1, 1, 1]):
        yield app(inc, bits_input(bits))
    for n in (0, 1, 4):
        yield app(set_, nat_input(n))
    plain_bit = TSum(UNIT_T, UNIT_T)
    yield app(plain, list_literal([Inr(UnitVal(), UNIT_T), Inl(UnitVal(), UNIT_T)], plain_bit))
    spawn = corpus_spawn().expand("spawn")
    for n in (0, 3):
        yield app(spawn, nat_input(n))
