"""The normal-form list, with moduli instantiated at alpha = 1, beta = 2."""

from __future__ import annotations

from dataclasses import dataclass

from .jets import PlaneGermJet

ALPHA, BETA = 1, 2


@dataclass(frozen=True)
class NormalForm:
    label: str
    type: str
    cod: int
    f1: str
    f2: str
    name: str = ""

    def germ(self, order: int = 12) -> PlaneGermJet:
        return PlaneGermJet.parse(self.f1, self.f2, order)


def _nf(label, cod, f2, name="", f1="x"):
    return NormalForm(label, label.rstrip("+-"), cod, f1, f2, name)


NORMAL_FORMS: tuple[NormalForm, ...] = (
    _nf("1", 0, "y", "regular"),
    _nf("2", 1, "y^2", "fold"),
    _nf("3", 2, "x*y + y^3", "cusp"),
    _nf("4_2+", 3, "y^3 + x^2*y", "lips"),
    _nf("4_2-", 3, "y^3 - x^2*y", "beaks"),
    _nf("5", 3, "x*y + y^4", "swallowtail"),
    _nf("4_3", 4, "y^3 + x^3*y", "goose"),
    _nf("6+", 4, "x*y + y^5 + y^7", "butterfly"),
    _nf("6-", 4, "x*y + y^5 - y^7", "butterfly"),
    _nf("11_5", 4, "x*y^2 + y^4 + y^5", "gulls"),
    _nf("4_4+", 5, "y^3 + x^4*y", "ugly goose"),
    _nf("4_4-", 5, "y^3 - x^4*y", "ugly goose"),
    _nf("7", 5, "x*y + y^5", "elder butterfly"),
    _nf("11_7", 5, "x*y^2 + y^4 + y^7", "ugly gulls"),
    _nf("12", 5, "x*y^2 + y^5 + y^6"),
    _nf("16+", 5, "x^2*y + y^4 + y^5"),
    _nf("16-", 5, "x^2*y + y^4 - y^5"),
    _nf("8+", 5, f"x*y + y^6 + y^8 + {ALPHA}*y^9", "unimodal"),
    _nf("8-", 5, f"x*y + y^6 - y^8 + {ALPHA}*y^9", "unimodal"),
    _nf("4_5", 6, "y^3 + x^5*y"),
    _nf("9", 6, "x*y + y^6 + y^9"),
    _nf("10+", 6, f"x*y + y^7 + y^9 + {ALPHA}*y^10 + {BETA}*y^11", "bimodal"),
    _nf("10-", 6, f"x*y + y^7 - y^9 + {ALPHA}*y^10 + {BETA}*y^11", "bimodal"),
    _nf("11_9", 6, "x*y^2 + y^4 + y^9"),
    _nf("13+", 6, "x*y^2 + y^5 + y^9"),
    _nf("13-", 6, "x*y^2 + y^5 - y^9"),
    _nf("15", 6, f"x*y^2 + y^6 + y^7 + {ALPHA}*y^9", "unimodal"),
    _nf("17", 6, "x^2*y + y^4"),
    _nf("18", 6, f"x^2*y + x*y^3 + {ALPHA}*y^5 + y^6 + {BETA}*y^7", "bimodal"),
    _nf("19", 6, f"x^3*y + {ALPHA}*x^2*y^2 + y^4 + x^3*y^2", "unimodal"),
)

LABELS: tuple[str, ...] = tuple(nf.label for nf in NORMAL_FORMS)
TYPES: tuple[str, ...] = tuple(dict.fromkeys(nf.type for nf in NORMAL_FORMS))

# moduli each normal form should report at alpha = 1, beta = 2
EXPECTED_MODULI = {
    "8": {"alpha": 1},
    "10": {"alpha": 1, "beta": 2},
    "15": {"alpha": 1},
    "18": {"alpha": 1, "beta": 2},
    "19": {"alpha": 1},
}


def by_label(label: str) -> NormalForm:
    for nf in NORMAL_FORMS:
        if nf.label == label:
            return nf
    raise KeyError(label)
