# data_models/program.py
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr
from typing import Any, Dict, List, Optional

from data_models.credits import CreditTerm, ZERO_CREDIT
from data_models.la_syntax import LA, LATerm, LAType


class Definition(BaseModel):
    """A named top-level definition: ``(def name [bank] type term)``."""
    name: str
    type: Any  # LAType
    term: Any  # LATerm
    bank: Any = ZERO_CREDIT  # CreditTerm

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def declared_type(self) -> LAType:
        return self.type

    @property
    def declared_bank(self) -> CreditTerm:
        return self.bank


class ProgramFile(BaseModel):
    """Definitions in source order plus an optional distinguished ``main``.

    Later definitions may mention earlier ones by name; :meth:`expand`
    splices a copy of each referenced definition in place of the name.
    """
    definitions: List[Definition] = Field(default_factory=list)
    main: Any = None  # Optional[LATerm]

    model_config = ConfigDict(arbitrary_types_allowed=True)
    _cache: Optional[Dict[str, Any]] = PrivateAttr(default=None)

    @property
    def names(self) -> List[str]:
        return [d.name for d in self.definitions]

    def get(self, name: str) -> Optional[Definition]:
        return next((d for d in self.definitions if d.name == name), None)

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def add(self, definition: Definition) -> "ProgramFile":
        if definition.name in self:
            raise ValueError(f"duplicate definition '{definition.name}'")
        return ProgramFile(definitions=self.definitions + [definition], main=self.main)

    def _expand_term(self, term: LATerm, visible: List[Definition]) -> LATerm:
        pairs = [(d.name, self._expanded[d.name]) for d in visible if d.name in term.free_vars]
        return LA.substitute_many(term, tuple(pairs)) if pairs else term

    @property
    def _expanded(self) -> Dict[str, LATerm]:
        if self._cache is None:
            self._cache = {}
            for i, d in enumerate(self.definitions):
                self._cache[d.name] = self._expand_term(d.term, self.definitions[:i]) if i else d.term
        return self._cache

    def expand(self, name: str) -> LATerm:
        """The term of ``name`` with every earlier definition inlined."""
        if name not in self:
            raise KeyError(name)
        return self._expanded[name]

    def expand_main(self) -> Optional[LATerm]:
        if self.main is None:
            return None
        return self._expand_term(self.main, self.definitions)

    def expanded_definitions(self) -> List[Definition]:
        return [d.model_copy(update={"term": self.expand(d.name)}) for d in self.definitions]
