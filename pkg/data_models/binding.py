# data_models/binding.py
"""Name-binding machinery shared by the three term languages.

Every AST node is a frozen dataclass. A node class declares ``_binders``,
mapping a child field to the fields holding the names it binds there, e.g.
``{"body": ("var",)}`` for a λ. :class:`Syntax` derives free variables,
capture-avoiding substitution and α-equivalence from that table.
"""
import dataclasses
from typing import Callable, Dict, FrozenSet, Iterable, List, Tuple


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """``base`` with primes appended until it avoids every name in ``avoid``."""
    avoid = set(avoid)
    stem = base.rstrip("'") or "x"
    candidate = stem
    while candidate in avoid:
        candidate += "'"
    return candidate


class Syntax:
    def __init__(self, base_cls: type, var_cls: type):
        self.base_cls = base_cls
        self.var_cls = var_cls
        self._field_cache: Dict[type, Tuple[str, ...]] = {}

    def fields_of(self, cls: type) -> Tuple[str, ...]:
        names = self._field_cache.get(cls)
        if names is None:
            names = tuple(f.name for f in dataclasses.fields(cls))
            self._field_cache[cls] = names
        return names

    def _is_term(self, value) -> bool:
        return isinstance(value, self.base_cls)

    def _is_term_tuple(self, value) -> bool:
        return isinstance(value, tuple) and bool(value) and isinstance(value[0], self.base_cls)

    def children(self, node) -> List[Tuple[str, object]]:
        out = []
        for name in self.fields_of(type(node)):
            value = getattr(node, name)
            if self._is_term(value) or self._is_term_tuple(value):
                out.append((name, value))
        return out

    def compute_free_vars(self, node) -> FrozenSet[str]:
        if isinstance(node, self.var_cls):
            return frozenset((node.name,))
        binders = type(node)._binders
        acc = set()
        for name, child in self.children(node):
            if isinstance(child, tuple):
                for item in child:
                    acc |= item.free_vars
                continue
            bound = {getattr(node, b) for b in binders.get(name, ())}
            acc |= child.free_vars - bound
        return frozenset(acc)

    def substitute(self, node, name: str, replacement):
        """Capture-avoiding ``node[replacement/name]``."""
        if name not in node.free_vars:
            return node
        if isinstance(node, self.var_cls):
            return replacement
        binders = type(node)._binders
        changes = {}
        for field_name, child in self.children(node):
            if isinstance(child, tuple):
                changes[field_name] = tuple(self.substitute(c, name, replacement) for c in child)
                continue
            binder_fields = binders.get(field_name, ())
            bound = [changes.get(b, getattr(node, b)) for b in binder_fields]
            if name in bound:
                continue
            for binder_field in binder_fields:
                old = changes.get(binder_field, getattr(node, binder_field))
                if old not in replacement.free_vars:
                    continue
                avoid = set(replacement.free_vars) | set(child.free_vars) | set(bound) | {name}
                new = fresh_name(old, avoid)
                child = self.substitute(child, old, self.var_cls(new))
                changes[binder_field] = new
                bound = [changes.get(b, getattr(node, b)) for b in binder_fields]
            changes[field_name] = self.substitute(child, name, replacement)
        return dataclasses.replace(node, **changes)

    def substitute_many(self, node, bindings: Iterable[Tuple[str, object]]):
        for name, value in bindings:
            node = self.substitute(node, name, value)
        return node

    def alpha_equal(self, a, b, env_a=None, env_b=None) -> bool:
        env_a = env_a or {}
        env_b = env_b or {}
        if type(a) is not type(b):
            return False
        if isinstance(a, self.var_cls):
            la, lb = env_a.get(a.name), env_b.get(b.name)
            if la is None and lb is None:
                return a.name == b.name
            return la is lb
        binders = type(a)._binders
        binder_fields = {f for fs in binders.values() for f in fs}
        for field_name in self.fields_of(type(a)):
            if field_name in binder_fields:
                continue
            va, vb = getattr(a, field_name), getattr(b, field_name)
            if self._is_term(va):
                ea, eb = env_a, env_b
                if field_name in binders:
                    ea, eb = dict(env_a), dict(env_b)
                    for bf in binders[field_name]:
                        token = object()
                        ea[getattr(a, bf)] = token
                        eb[getattr(b, bf)] = token
                if not self.alpha_equal(va, vb, ea, eb):
                    return False
            elif self._is_term_tuple(va):
                if not isinstance(vb, tuple) or len(va) != len(vb):
                    return False
                if not all(self.alpha_equal(x, y, env_a, env_b) for x, y in zip(va, vb)):
                    return False
            elif va != vb:
                return False
        return True

    def size(self, node) -> int:
        total = 1
        for _, child in self.children(node):
            if isinstance(child, tuple):
                total += sum(self.size(c) for c in child)
            else:
                total += self.size(child)
        return total

    def count_free(self, node, name: str) -> int:
        """Number of free occurrences of ``name``."""
        if name not in node.free_vars:
            return 0
        if isinstance(node, self.var_cls):
            return 1
        binders = type(node)._binders
        total = 0
        for field_name, child in self.children(node):
            if isinstance(child, tuple):
                total += sum(self.count_free(c, name) for c in child)
                continue
            if name in {getattr(node, b) for b in binders.get(field_name, ())}:
                continue
            total += self.count_free(child, name)
        return total

    def contains(self, node, predicate: Callable[[object], bool]) -> bool:
        if predicate(node):
            return True
        for _, child in self.children(node):
            items = child if isinstance(child, tuple) else (child,)
            if any(self.contains(c, predicate) for c in items):
                return True
        return False

    def all_names(self, node) -> FrozenSet[str]:
        """Every variable name occurring in ``node``, bound or free."""
        names = set()
        stack = [node]
        while stack:
            current = stack.pop()
            if isinstance(current, self.var_cls):
                names.add(current.name)
                continue
            for fs in type(current)._binders.values():
                names.update(getattr(current, f) for f in fs)
            for _, child in self.children(current):
                stack.extend(child if isinstance(child, tuple) else (child,))
        return frozenset(names)
