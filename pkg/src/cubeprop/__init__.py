"""Finite, dimension-truncated cubical sets and the classifier constructions
for double-negation-stable h-propositions, with oracle-level Dedekind cocuts
and a register-machine kernel for Church's-thesis instance checks."""

__version__ = "0.1.0"
