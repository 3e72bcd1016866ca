"""Root numbers of the twisted Fermat quotient Jacobian factors phi_delta^(N).

Covers the regime ell^(N-1) || r, where the local root number at ell needs a
wild Hilbert symbol. Modules, bottom up:

- padic_core: valuations, unit decompositions, Teichmuller lifts, CurveParams
- series_engine: truncated power series over Z/ell^M
- conductors: conductor branches of Q_ell(zeta_{ell^N}, a^(1/ell^N))
- hilbert: c_ell residues, the Vostokov check, closed-form symbol values
- jtable: the J(N, f) table and its text format
- root_numbers: local and global root numbers, sweeps over delta
- calibration: fitting J against known root numbers
- tables: the published ell = 3, N = 2 tables
- curve_models: rationality and plane-model identities
- report, config, cli: the command-line surface
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"
