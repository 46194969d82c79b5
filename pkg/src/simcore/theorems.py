"""Closed-form central moments of the size of an (s,t)-core partition.

Entries 1..6 are polynomials in ``s`` and ``t`` (mean, then central moments
2..6).  Entries 7..9 are central moments for the pair ``(s, s+1)`` and are
polynomials in ``s`` alone.  The strings below are the factored forms,
expanded once on first use.
"""

from __future__ import annotations

from functools import lru_cache

from .exactmath import BivariatePolynomial

_COMMON = "s*t*(t-1)*(s-1)*(s+t+1)*(s+t)"

THEOREM_TEXT: dict[int, str] = {
    1: "(s-1)*(t-1)*(s+t+1)/24",
    2: f"1/1440*{_COMMON}",
    3: f"1/60480*{_COMMON}*(2*s^2*t+2*s*t^2-3*s^2-3*s*t-3*t^2-3)",
    4: (
        f"1/4838400*{_COMMON}*(19*s^4*t^2+38*s^3*t^3+19*s^2*t^4-51*s^4*t-102*s^3*t^2"
        "-102*s^2*t^3-51*s*t^4+36*s^4+72*s^3*t+108*s^2*t^2+72*s*t^3+36*t^4-33*s^2*t"
        "-33*s*t^2+36*s^2+36*s*t+36*t^2+120)"
    ),
    5: (
        "1/95800320*s*t*(t-1)*(s-1)*(s+t+1)*(s+t)*(46*s**6*t**3+138*s**5*t**4+138*s**4*t**5+46"
        "*s**3*t**6 "
        "-211*s**6*t**2 - 633*s**5*t**3-844*s**4*t**4 - 633*s**3*t**5-211*s**2*t**6 + 333*s**6*t +"
        "999*s**5*t**2 + 1665*s**4*t**3+1665*s**3*t**4 + 999*s**2*t**5+333*s*t**6 "
        "- 180*s**6-540*s**5*t - 1283*s**4*t**2-1666*s**3*t**3 - 1283*s**2*t**4 - 540*s*t**5"
        "-180*t**6 + 420*s**4*t + 840*s**3*t**2 + 840*s**2*t**3 + 420*s*t**4-180*s**4 - 360*s**3*t - 540*s**2*t**2"
        " - 360*s*t**3 - 180*t**4 + 327*s**2*t + 327*s*t**2 - 180*s**2 - 180*s*t - 180*t**2 - 3780)"
    ),
    6: (
        "1/4184557977600*s*t*(t-1)*(s-1)*(s+t+1)*(s+t)*(307561*s**8*t**4+1230244*s**7*t**5+"
        "1845366*s**6*t**6+1230244*s**5*t**7+307561*s**4*t**8-2056306*s**8*t**3-8225224*s**7*t**4-"
        "14394142*s**6*t**5-14394142*s**5*t**6-8225224*s**4*t**7-2056306*s**3*t**8+5372061*s**8*t"
        "**2+21488244*s**7*t**3+42976488*s**6*t**4+53720610*s**5*t**5+42976488*s**4*t**6+21488244"
        "*s**3*t**7+5372061*s**2*t**8-6453396*s**8*t-25813584*s**7*t**2-60704054*s**6*t**3-"
        "91764618*s**5*t**4-91764618*s**4*t**5-60704054*s**3*t**6-25813584*s**2*t**7-6453396*s*t"
        "**8+2985120*s**8+11940480*s**7*t+39743142*s**6*t**2+77437746*s**5*t**3+96285048*s**4*t**"
        "4+77437746*s**3*t**5+39743142*s**2*t**6+11940480*s*t**7+2985120*t**8-11104272*s**6*t-"
        "33312816*s**5*t**2-55521360*s**4*t**3-55521360*s**3*t**4-33312816*s**2*t**5-11104272*s*"
        "t**6+2985120*s**6+8955360*s**5*t+23840061*s**4*t**2+32754522*s**3*t**3+23840061*s**2*t**"
        "4+8955360*s*t**5+2985120*t**6-9109476*s**4*t-18218952*s**3*t**2-18218952*s**2*t**3-"
        "9109476*s*t**4+2985120*s**4+5970240*s**3*t+8955360*s**2*t**2+5970240*s*t**3+2985120*t"
        "**4+8664840*s**2*t+8664840*s*t**2-62687520*s**2-62687520*s*t-62687520*t**2+626875200)"
    ),
    7: (
        "1/149448499200*s**2*(s-1)*(s-2)*(2*s+1)*"
        "(124496*s**14 - 527660*s**13 - 127268*s**12+ 2133077*s**11"
        "+ 1565655*s**10-3928575*s**9-7848989*s**8-3573289*s**7"
        "+ 7257797*s**6 +16741975*s**5+16528197*s**4+3583272*s**3"
        "- 67819248*s**2-18541440*s+138620160)"
        "*(s+1)**2"
    ),
    8: (
        "1/914624815104000*s**2 * (s-1)*(2*s+1)* "
        "(308851624*s**18 - 2759073420*s**17 + 7345195650*s**16 + 1614779679*s**15 - 27716691813*s**14"
        "- 3203324556*s**13 + 61922226136*s**12 +"
        "52270343442*s**11 - 49025878614*s**10 - 146716496688*s**9"
        "- 153171599682*s**8 - 30342055161*s**7"
        "+ 158893451131*s**6 - 165853921776*s**5 + 1073038790016*s**4"
        "+ 9260929255680*s**3 - 11293714925568*s**2 - 19188060088320*s + 21924617379840)* (s+1)**2"
    ),
    9: (
        "1/182467650613248000*s**2*(s-1)*(s-2)*(2*s+1)*"
        "(28092743584*s**20 - 284614603048*s**19 + 908242721124*s**18 - 87722680542*s**17"
        "- 4040707469643*s**16 + 1347179583168*s**15 + 11350317109273*s**14"
        "+ 4824122583716*s**13 - 15816684214230*s**12 - 31535118689736*s**11"
        "- 29475404073738*s**10 + 2671156715274*s**9 + 63014451511513*s**8"
        " + 79700408583680*s**7 + 45859575725901*s**6 - 377516262865248*s**5"
        " + 6309067352294376*s**4 + 10737857697068736*s**3 - 38301852570773760*s**2"
        "- 26103018295756800*s + 48704747653094400 )* (s+1)**2"
    ),
}

BIVARIATE = range(1, 7)
SUCCESSIVE = range(7, 10)


def is_successive_only(index: int) -> bool:
    """True for the entries that only hold for ``t = s + 1``."""
    return index in SUCCESSIVE


@lru_cache(maxsize=None)
def theorem_polynomial(index: int) -> BivariatePolynomial:
    if index not in THEOREM_TEXT:
        raise ValueError(f"theorem index must be in 1..9, got {index}")
    return BivariatePolynomial.parse(THEOREM_TEXT[index])


def evaluate_theorem(index: int, s: int, t: int):
    if is_successive_only(index) and t != s + 1:
        raise ValueError(f"theorem {index} only covers pairs (s, s+1); got ({s},{t})")
    return theorem_polynomial(index).evaluate(s, t)
