"""Test problems: analytic corpus, QNM systems, and named presets.

Presets are constructible by name (e.g. "schwarzschild-l2-n0",
"kerr-s-1-R2", "affine") plus optional key=value overrides for s, a, m, n,
depth and tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from ..types import BivariateSystem, PointPair, PrecondViolation
from .contfrac import CFProblem, cf_eval, cf_eval_info, lentz
from .corpus import C3_ROOT_X, C4_ROOT, C5_FAIL_RADIUS, CorpusProblem, corpus
from .kernels import (
    kerr_angular_cf,
    kerr_angular_cf_py,
    kerr_radial_cf,
    kerr_radial_cf_py,
    rw_cf,
    rw_cf_py,
)
from .qnm import (
    Family,
    QNMProblemSpec,
    angular_surrogate,
    kerr_angular_cf_problem,
    kerr_radial_cf_problem,
    kerr_system,
    rw_cf_problem,
    schwarzschild_system,
)

# Paper benchmark targets, 2M = 1 units. The Schwarzschild list is the
# Table 2 row set; starts follow the published recipe
# (omega_n + 0.01 + 0.01i, 2.1 + 0.01i).
SCHWARZSCHILD_TABLE = {
    0: 0.7473433689 + 0.177924631j,
    1: 0.6934219938 + 0.547829750j,
    2: 0.6021069092 + 0.956553966j,
    3: 0.5030099245 + 1.410296405j,
    4: 0.4150291596 + 1.893689782j,
    5: 0.3385988064 + 2.391216108j,
    6: 0.2665046810 + 2.895821253j,
    7: 0.1856446684 + 3.407682345j,
    8: 0.030649006 + 3.996823690j,
    9: 0.1265270180 + 4.605289542j,
    10: 0.1531069502 + 5.121653272j,
}

#: Kerr rows (s = -1, a = 0.01, m = 0): published value, start pair, and the
#: radial inversion index that stabilizes the mode.
KERR_TABLE = {
    1: {"omega": 0.4965436315 + 0.1849695292j,
        "y": 1.9999915063 - 0.7347653e-5j,
        "start": PointPair(0.49 + 0.18j, 2.001 + 0.1j), "inversion": 0},
    2: {"omega": 0.3495869222 + 1.0503235984j,
        "y": 2.0000392386 - 0.2937407e-4j,
        "start": PointPair(0.17 + 0.97j, 2.001 + 0.1j), "inversion": 2},
    3: {"omega": 0.0608496029 + 5.1191008697j,
        "y": 2.0010479243 - 0.2491318e-4j,
        "start": PointPair(0.069 + 5.146j, 2.001 + 0.051j), "inversion": 10},
}


@dataclass(frozen=True)
class Preset:
    """A named, ready-to-solve problem instance."""

    name: str
    make: Callable[[], BivariateSystem]
    start: PointPair
    roots: tuple[PointPair, ...] = ()
    description: str = ""
    expect_converge: bool = True
    tags: tuple[str, ...] = ()


def _schwarzschild_preset(n: int, spec: QNMProblemSpec | None = None) -> Preset:
    spec = spec or QNMProblemSpec(Family.SCHWARZSCHILD_RW, s=2, n=n, ell=2)
    omega = SCHWARZSCHILD_TABLE[n]
    return Preset(
        name=f"schwarzschild-l2-n{n}",
        make=lambda: schwarzschild_system(spec),
        start=PointPair(omega + 0.01 + 0.01j, 2.1 + 0.01j),
        roots=(PointPair(omega, 2.0 + 0j),),
        description=f"Regge-Wheeler gravitational mode l=2, overtone {n}",
        tags=("qnm", "schwarzschild"),
    )


def _kerr_preset(r: int, spec: QNMProblemSpec | None = None) -> Preset:
    row = KERR_TABLE[r]
    spec = spec or QNMProblemSpec(Family.KERR_TEUKOLSKY, s=-1, a=0.01, m=0,
                                  n=row["inversion"], ell=1)
    return Preset(
        name=f"kerr-s-1-R{r}",
        make=lambda: kerr_system(spec),
        start=row["start"],
        roots=(PointPair(row["omega"], row["y"]),),
        description=f"Kerr electromagnetic mode, table row R={r}",
        tags=("qnm", "kerr"),
    )


def _corpus_presets() -> list[Preset]:
    out = []
    for item in corpus():
        out.append(Preset(
            name=item.name,
            make=item.make,
            start=item.start,
            roots=item.roots,
            description=item.description,
            expect_converge=item.expect_converge,
            tags=("corpus",) + item.aliases,
        ))
    return out


def _registry() -> dict[str, Preset]:
    presets: dict[str, Preset] = {}
    for p in _corpus_presets():
        presets[p.name] = p
        for alias in p.tags:
            if alias.startswith("c") and len(alias) == 2:
                presets[alias] = p
    for n in SCHWARZSCHILD_TABLE:
        p = _schwarzschild_preset(n)
        presets[p.name] = p
    for r in KERR_TABLE:
        p = _kerr_preset(r)
        presets[p.name] = p
    return presets


def preset_names() -> list[str]:
    seen = {}
    for name, p in _registry().items():
        if name == p.name:
            seen[name] = None
    return list(seen)


def parse_overrides(text: str) -> dict[str, str]:
    """Parse "k=v[,k=v...]" (or the contents of a small key=value file)."""
    out: dict[str, str] = {}
    for chunk in text.replace("\n", ",").split(","):
        chunk = chunk.strip()
        if not chunk or chunk.startswith("#"):
            continue
        if "=" not in chunk:
            raise PrecondViolation(f"malformed key=value entry: {chunk!r}")
        key, value = chunk.split("=", 1)
        out[key.strip()] = value.strip()
    return out


_QNM_KEYS = {"s": int, "a": float, "m": int, "n": int, "ell": int,
             "depth": int, "cf_tol": float}


def build_preset(name: str, overrides: dict[str, str] | None = None) -> Preset:
    """Look up a preset by name, optionally overriding QNM parameters.

    Override keys: s, a, m, n, ell, depth, cf_tol. Overrides are only
    meaningful for the QNM presets; corpus presets reject them.
    """
    registry = _registry()
    if name not in registry:
        raise PrecondViolation(
            f"unknown problem {name!r}; known: {', '.join(sorted(preset_names()))}")
    preset = registry[name]
    if not overrides:
        return preset
    if "qnm" not in preset.tags:
        raise PrecondViolation(f"problem {name!r} takes no key=value overrides")
    kwargs = {}
    for key, raw in overrides.items():
        if key not in _QNM_KEYS:
            raise PrecondViolation(
                f"unknown override {key!r}; known: {', '.join(sorted(_QNM_KEYS))}")
        kwargs["max_depth" if key == "depth" else key] = _QNM_KEYS[key](raw)
    if preset.tags[-1] == "schwarzschild" or "schwarzschild" in preset.tags:
        n = int(name.rsplit("n", 1)[1])
        base = QNMProblemSpec(Family.SCHWARZSCHILD_RW, s=2, n=n, ell=2)
        spec = replace(base, **kwargs)
        return replace(preset, make=lambda: schwarzschild_system(spec))
    r = int(name.rsplit("R", 1)[1])
    base = QNMProblemSpec(Family.KERR_TEUKOLSKY, s=-1, a=0.01, m=0,
                          n=KERR_TABLE[r]["inversion"], ell=1)
    spec = replace(base, **kwargs)
    return replace(preset, make=lambda: kerr_system(spec))


#: Named benchmark sets for the CLI bench command. The Schwarzschild set
#: mirrors the Table 2 row indices used for hard acceptance (n = 8 excluded).
BENCH_SETS = {
    "corpus": ["affine", "circle-line", "integer-pathology",
               "double-transcendental", "failure-region"],
    "schwarzschild": [f"schwarzschild-l2-n{n}" for n in (0, 1, 2, 3, 4, 5, 6, 7, 9, 10)],
    "kerr": [f"kerr-s-1-R{r}" for r in (1, 2, 3)],
}

__all__ = [
    "BENCH_SETS",
    "CFProblem",
    "C3_ROOT_X",
    "C4_ROOT",
    "C5_FAIL_RADIUS",
    "CorpusProblem",
    "Family",
    "KERR_TABLE",
    "Preset",
    "QNMProblemSpec",
    "SCHWARZSCHILD_TABLE",
    "angular_surrogate",
    "build_preset",
    "cf_eval",
    "cf_eval_info",
    "corpus",
    "kerr_angular_cf",
    "kerr_angular_cf_problem",
    "kerr_angular_cf_py",
    "kerr_radial_cf",
    "kerr_radial_cf_problem",
    "kerr_radial_cf_py",
    "kerr_system",
    "lentz",
    "parse_overrides",
    "preset_names",
    "rw_cf",
    "rw_cf_problem",
    "rw_cf_py",
    "schwarzschild_system",
]
