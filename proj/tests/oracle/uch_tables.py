"""Unipotent-character reference tables and Schur data read from the LaTeX tables
of the source document.

Degrees are kept in factored form (coefficient, power of x, K-cyclotomic
factors), so no polynomial arithmetic is needed: the Schur element of a
principal-series character is Feg(R_1)/Deg computed on exponents. Numbers live
in Q(zeta_12) with exact rational coordinates.
"""

import pathlib
import re
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parents[2]
SOURCE = ROOT / "paper.md"
LABELS = ROOT / "data" / "labels" / "kcyclotomic.txt"

# --- Q(zeta_12), basis 1, z, z^2, z^3 with z^4 = z^2 - 1 -----------------


class Cyc:
    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = tuple(Fraction(v) for v in (c or (0, 0, 0, 0)))

    @staticmethod
    def rat(q):
        return Cyc((q, 0, 0, 0))

    @staticmethod
    def z12(k):
        out = Cyc.rat(1)
        for _ in range(k % 12):
            out = out * Cyc((0, 1, 0, 0))
        return out

    def __add__(self, o):
        o = _lift(o)
        return Cyc(tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(tuple(-a for a in self.c))

    def __sub__(self, o):
        return self + (-_lift(o))

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        o = _lift(o)
        p = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                p[i + j] += a * b
        for k in range(6, 3, -1):
            # z^k = z^{k-2} - z^{k-4}
            p[k - 2] += p[k]
            p[k - 4] -= p[k]
            p[k] = 0
        return Cyc(p[:4])

    __rmul__ = __mul__

    def __eq__(self, o):
        return self.c == _lift(o).c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def inverse(self):
        cols = [(self * Cyc.z12(j)).c for j in range(4)]
        sol = solve([[cols[j][i] for j in range(4)] for i in range(4)], [1, 0, 0, 0])
        return Cyc(sol)

    def __truediv__(self, o):
        return self * _lift(o).inverse()

    def galois(self, k):
        out = Cyc()
        for j, a in enumerate(self.c):
            out = out + Cyc.z12(j * k) * a
        return out

    def conductor(self):
        fixed = [k for k in (1, 5, 7, 11) if self.galois(k) == self]
        if len(fixed) == 4:
            return 1
        if fixed == [1, 7]:
            return 3
        if fixed == [1, 5]:
            return 4
        return 12

    def zumbroich(self):
        n = self.conductor()
        if n == 1:
            return 1, [(0, self.c[0])]
        exps = zumbroich_exponents(n)
        basis = [Cyc.z12(k * 12 // n).c for k in exps]
        mat = [[basis[j][i] for j in range(len(exps))] for i in range(4)]
        sol = solve(mat, list(self.c))
        return n, [(k, v) for k, v in zip(exps, sol) if v != 0]

    def __str__(self):
        n, terms = self.zumbroich()
        if n == 1:
            return str(terms[0][1])
        out = ""
        for k, v in terms:
            if k == 0:
                t = str(v)
            else:
                e = f"E({n},{k})"
                t = e if v == 1 else "-" + e if v == -1 else f"{v}*{e}"
            if out and not t.startswith("-"):
                out += "+"
            out += t
        return out


def _lift(o):
    return o if isinstance(o, Cyc) else Cyc.rat(o)


def solve(a, b):
    """Solve a consistent (possibly overdetermined) system exactly."""
    rows = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(a, b)]
    ncol = len(a[0])
    piv = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            raise ValueError("inconsistent system")
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(piv):
        sol[c] = rows[i][-1]
    return sol


def zumbroich_prime_power(p, nu):
    if p == 2:
        return list(range(2 ** (nu - 1)))
    base = list(range(1, p))
    q = p
    for _ in range(2, nu + 1):
        base = [p * b + k for b in base for k in range(-(p - 1) // 2, (p - 1) // 2 + 1)]
        q *= p
    return [e % q for e in base]


def zumbroich_exponents(n):
    exps = [0]
    m = n
    for p in (2, 3):
        if m % p:
            continue
        nu, q = 0, 1
        while m % p == 0:
            m //= p
            q *= p
            nu += 1
        exps = [(e + (n // q) * f) % n for e in exps for f in zumbroich_prime_power(p, nu)]
    return sorted(exps)


Z3 = Cyc.z12(4)
I = Cyc.z12(3)
SQRT_M3 = Z3 - Z3 * Z3

# --- K-cyclotomic labels ----------------------------------------------------


def parse_simple_poly(text):
    """Coefficient list (low degree first) of polynomials such as x^2+ζ3x-1."""
    coeffs = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text.replace(" ", "")):
        m = re.fullmatch(r"(ζ3\^2|ζ3|i|\d+)?(x(?:\^(\d+))?)?", body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot read term {body!r} of {text!r}")
        atom = {"ζ3": Z3, "ζ3^2": Z3 * Z3, "i": I, None: Cyc.rat(1)}.get(m.group(1))
        if atom is None:
            atom = Cyc.rat(int(m.group(1)))
        deg = 0 if m.group(2) is None else int(m.group(3) or 1)
        val = -atom if sign == "-" else atom
        coeffs[deg] = coeffs.get(deg, Cyc()) + val
    top = max(coeffs)
    return [coeffs.get(k, Cyc()) for k in range(top + 1)]


def read_labels():
    sections = {}
    cur = None
    for line in LABELS.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            cur = line[1:-1]
            sections[cur] = []
            continue
        label, poly = (s.strip() for s in line.split("="))
        d = int(re.search(r"(\d+)$", label).group(1))
        sections[cur].append((label, d, poly))
    return sections


FIELD_SECTION = {3: "Q(ζ3)", 4: "Q(i)"}


class Field:
    def __init__(self, conductor):
        self.conductor = conductor
        sec = read_labels()[FIELD_SECTION[conductor]]
        self.split = {}
        self.polys = {}
        for label, d, poly in sec:
            self.split.setdefault(d, []).append(label)
            self.polys[label] = parse_simple_poly(poly)

    def expand(self, label, mult):
        """K-factors of a Phi label (a full Phi_d splits when K allows)."""
        m = re.fullmatch(r"Phi(\d+)", label)
        if m and int(m.group(1)) in self.split:
            return {lab: mult for lab in self.split[int(m.group(1))]}
        return {label: mult}

    @staticmethod
    def root_order(label):
        return int(re.search(r"(\d+)$", label).group(1))

    def value_at_one(self, label):
        m = re.fullmatch(r"Phi(\d+)", label)
        if m:
            d = int(m.group(1))
            if d == 1:
                return Cyc()
            for p in (2, 3, 5, 7):
                q = p
                while q <= d:
                    if q == d:
                        return Cyc.rat(p)
                    q *= p
            return Cyc.rat(1)
        out = Cyc()
        for c in self.polys[label]:
            out = out + c
        return out

    def format(self, coef, xpow, factors):
        parts = []
        if coef != 1:
            if coef == -1:
                parts.append("-1")
            elif len(coef.zumbroich()[1]) > 1:
                parts.append(f"({coef})")
            else:
                parts.append(str(coef))
        if xpow == 1:
            parts.append("x")
        elif xpow != 0:
            parts.append(f"x^{xpow}")

        def exp(s, m):
            return f"{s}^{m}" if m > 1 else s

        for d in sorted({self.root_order(lab) for lab, m in factors.items() if m}):
            if d in self.split:
                labs = self.split[d]
                mm = min(factors.get(lab, 0) for lab in labs)
                if mm:
                    parts.append(exp(f"Phi{d}", mm))
                for lab in labs:
                    if factors.get(lab, 0) - mm > 0:
                        parts.append(exp(lab, factors[lab] - mm))
            else:
                parts.append(exp(f"Phi{d}", factors[f"Phi{d}"]))
        return "*".join(parts) if parts else "1"


# --- LaTeX cells -------------------------------------------------------------


def latex_number(tex):
    """Value of numerators like 3-\\sqrt {-3}, -i+1, -\\zeta_3^2, i."""
    s = tex.replace(" ", "")
    s = s.replace(r"\sqrt{-3}", "S").replace(r"\zeta_3^2", "W").replace(r"\zeta_3^4", "Y")
    s = s.replace(r"\zeta_3", "V").replace(r"\zeta_{3}", "V")
    if s == "":
        return Cyc.rat(1)
    atoms = {"S": SQRT_M3, "W": Z3 * Z3, "V": Z3, "Y": Z3 * Z3 * Z3 * Z3, "i": I}
    total = Cyc()
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = re.fullmatch(r"(\d*)([SWVYi]*)", body)
        if not m:
            raise ValueError(f"cannot read number {tex!r}")
        val = Cyc.rat(int(m.group(1)) if m.group(1) else 1)
        for a in m.group(2):
            val = val * atoms[a]
        total = total + (-val if sign == "-" else val)
    return total


def take_group(s):
    """Leading {...} group or single character; returns (content, rest)."""
    s = s.lstrip()
    if s.startswith("{"):
        depth = 0
        for k, ch in enumerate(s):
            depth += ch == "{"
            depth -= ch == "}"
            if depth == 0:
                return s[1:k], s[k + 1:]
    return s[0], s[1:]


PHI = re.compile(r"\{?\\Phi(''|')?_(\d+|\{\d+\})\}?(?:\^(\d+))?")


def latex_degree(tex, field):
    """(coefficient, power of x, K-factor multiplicities) of a degree cell."""
    s = tex.strip()
    coef = Cyc.rat(1)
    if s.startswith(r"\frac"):
        num, s = take_group(s[len(r"\frac"):])
        den, s = take_group(s)
        coef = latex_number(num) / latex_number(den)
    xpow = 0
    m = re.match(r"\s*[qx](?:\^(\d+|\{\d+\}))?", s)
    if m:
        xpow = int(m.group(1).strip("{}")) if m.group(1) else 1
        s = s[m.end():]
    factors = {}
    s = s.strip()
    if s == "1" and xpow == 0:
        s = ""
    while s:
        m = PHI.match(s)
        if not m:
            raise ValueError(f"cannot read degree {tex!r} at {s!r}")
        label = "Phi" + (m.group(1) or "") + m.group(2).strip("{}")
        for lab, mult in field.expand(label, int(m.group(3) or 1)).items():
            factors[lab] = factors.get(lab, 0) + mult
        s = s[m.end():].strip()
    return coef, xpow, factors


def latex_root(tex):
    s = tex.strip()
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    val = latex_number(s) if s not in ("1",) else Cyc.rat(1)
    return -val if neg else val


def latex_name(tex):
    s = tex.strip()
    s = s.replace(r"\phi", "phi").replace(r"\zeta_3^2", "ζ3^2").replace(r"\zeta_3", "ζ3")
    s = re.sub(r"_\{(\d+)\}", r"_\1", s)
    return s


def latex_spec(tex):
    s = re.sub(r"_\s+", "_", tex)
    s = re.sub(r"\s+", " ", s).replace(r"\allowbreak", "").replace(r"{\mathcal H}", "H")
    s = s.replace(r"\zeta_3", "ζ3").replace(r"\zeta_{3}", "ζ3")
    s = re.sub(r"_\{(\d+)\}", r"_\1", s)
    s = re.sub(r"\s*,\s*", ", ", s).replace("( ", "(").strip()
    return s


# --- tables ------------------------------------------------------------------


def section(title):
    text = SOURCE.read_text(encoding="utf-8")
    start = text.index(r"\subsection{Unipotent characters for $" + title + "$}")
    end = text.index(r"\subsection", start + 10)
    return text[start:end]


def join_continuations(text):
    out = []
    buf = ""
    for line in text.splitlines():
        trail = len(line) - len(line.rstrip("\\"))
        if trail % 2 == 1:
            buf += line[:-1]
        else:
            out.append(buf + line)
            buf = ""
    if buf:
        out.append(buf)
    return "\n".join(out)


def parse_table(title):
    sec = join_continuations(section(title))
    body = sec[sec.index(r"\begin{supertabular}"):sec.index(r"\end{supertabular}")]
    body = body.split("\n", 1)[1].replace(r"\shrinkheight{30pt}", "")
    rows = []
    family = 1
    for chunk in body.split("\\\\"):
        chunk = chunk.strip()
        while chunk.startswith(r"\hline"):
            if any(r["family"] == family for r in rows):
                family += 1
            chunk = chunk[len(r"\hline"):].strip()
        if not chunk:
            continue
        cells = [c.strip() for c in chunk.split("&")]
        name = cells[0]
        marker = "-"
        if name.startswith(r"*\hfill"):
            marker, name = "special", name[len(r"*\hfill"):]
        elif name.startswith(r"\#\hfill"):
            marker, name = "cospecial", name[len(r"\#\hfill"):]
        rows.append({
            "name": latex_name(name),
            "degree": cells[1],
            "fr": cells[2],
            "symbol": cells[3] if len(cells) > 3 else "",
            "family": family,
            "marker": marker,
        })
    series, hc = [], []
    for m in re.finditer(r"\$([^$]+)\$ : \$(\{\\mathcal H\}_\{Z_\{\d+\}\})\$?\s*\n?\s*(\([^)]*\))", sec):
        label = m.group(1).replace(r"\zeta_{3}^{2}", "ζ3^2").replace(r"\zeta_{3}", "ζ3").replace(r"\zeta_{4}", "ζ4")
        series.append((label, latex_spec(m.group(2) + m.group(3))))
    for m in re.finditer(r"\{\\mathcal H\}_\{G_\{[^}]*\}\}\((\w+)\)=(\{\\mathcal H\}_\{[^()]*?\}\([^)]*\))", sec):
        hc.append((latex_name(m.group(1).replace("Z3", "Z_3")), latex_spec(m.group(2))))
    return rows, series, hc


def order_text(n_hyp, degrees):
    poly = {n_hyp: 1}
    for d in degrees:
        nxt = {}
        for e, c in poly.items():
            nxt[e + d] = nxt.get(e + d, 0) + c
            nxt[e] = nxt.get(e, 0) - c
        poly = {e: c for e, c in nxt.items() if c}
    out = ""
    for e in sorted(poly, reverse=True):
        c = poly[e]
        mono = "x" if e == 1 else f"x^{e}" if e else ""
        if not mono:
            t = str(c)
        elif c == 1:
            t = mono
        elif c == -1:
            t = "-" + mono
        else:
            t = f"{c}*{mono}"
        if out and not t.startswith("-"):
            out += "+"
        out += t
    return out


def order_factors(n_hyp, degrees, field):
    factors = {}
    for d in degrees:
        for k in range(1, d + 1):
            if d % k == 0:
                for lab, m in field.expand(f"Phi{k}", 1).items():
                    factors[lab] = factors.get(lab, 0) + m
    return n_hyp, factors


GROUPS = {
    # table title, file stem, builtin name, conductor, N^hyp, degrees, |W|
    "Z3": ("Z_{3}", "Z3", 3, 1, [3], 3),
    "Z4": ("Z_{4}", "Z4", 4, 1, [4], 4),
    "G4": ("G_{4}", "G4", 3, 4, [4, 6], 24),
    "G312": ("G_{3,1,2}", "G(3,1,2)", 3, 5, [3, 6], 18),
}


def emit(group, conductor, order, series, hc, rows, field):
    lines = [f"group {group}", f"conductor {conductor}", f"order {order}"]
    lines += [f"series {lab} {spec}" for lab, spec in series]
    lines += [f"hc {lab} {spec}" for lab, spec in hc]
    for f in sorted({r["family"] for r in rows}):
        lines.append(f"family {f}")
        for r in rows:
            if r["family"] != f:
                continue
            deg = field.format(*r["parsed"])
            cells = [r["name"], deg, r["fr_text"], str(f), r["marker"]]
            if r["symbol"]:
                cells.append(r["symbol"])
            lines.append(" | ".join(cells))
    return "\n".join(lines) + "\n"


def divides(deg, order):
    n, of = order
    _, xp, fac = deg
    return xp <= n and all(of.get(k, 0) >= m for k, m in fac.items())


def source_table(key):
    title, group, conductor, n_hyp, degrees, _ = GROUPS[key]
    field = Field(conductor)
    rows, series, hc = parse_table(title)
    order = order_factors(n_hyp, degrees, field)
    for r in rows:
        r["parsed"] = latex_degree(r["degree"], field)
        r["fr_text"] = str(latex_root(r["fr"]))
        if not divides(r["parsed"], order):
            raise ValueError(f"{key}: degree of {r['name']} does not divide the order")
    text = emit(group, conductor, order_text(n_hyp, degrees), series, hc, rows, field)
    return text, rows, field


def chartable_degrees(stem):
    out = {}
    for line in (ROOT / "data" / "chartables" / f"{stem}.txt").read_text(encoding="utf-8").splitlines():
        if " : " in line:
            name, vals = line.split(" : ")
            out[name.strip()] = int(vals.split(",")[0])
    return out


def schur_file(key):
    title, group, conductor, n_hyp, degrees, order = GROUPS[key]
    _, rows, field = source_table(key)
    theta1 = chartable_degrees(key)
    # Feg(R_1) = prod (x^d - 1)/(x - 1)
    feg = {}
    for d in degrees:
        for k in range(2, d + 1):
            if d % k == 0:
                for lab, m in field.expand(f"Phi{k}", 1).items():
                    feg[lab] = feg.get(lab, 0) + m
    lines = [f"group {group}"]
    for r in rows:
        if r["name"] not in theta1:
            continue
        coef, xp, fac = r["parsed"]
        s = {lab: feg.get(lab, 0) - fac.get(lab, 0) for lab in set(feg) | set(fac)}
        if any(m < 0 for m in s.values()):
            raise ValueError(f"{key}: Deg({r['name']}) does not divide Feg(R_1)")
        s = {k: v for k, v in s.items() if v}
        value = Cyc.rat(1) / coef
        for lab, m in s.items():
            for _ in range(m):
                value = value * field.value_at_one(lab)
        if value != Cyc.rat(Fraction(order, theta1[r["name"]])):
            raise ValueError(f"{key}: S(1) != |W|/theta(1) for {r['name']}")
        lines.append(f"{r['name']} | {field.format(Cyc.rat(1) / coef, -xp, s)} | {r['family']}")
    return "\n".join(lines) + "\n"


def intro_table():
    """The introductory Z3 table, written with the cyclic-spets names."""
    field = Field(3)
    z = Z3
    rows = [
        ("Id", (Cyc.rat(1), 0, {}), Cyc.rat(1), 1),
        ("rho_{1,0}", (Cyc.rat(1) / (1 - z * z), 1, {"Phi''3": 1}), Cyc.rat(1), 2),
        ("rho_{2,0}", (Cyc.rat(1) / (1 - z), 1, {"Phi'3": 1}), Cyc.rat(1), 2),
        ("rho_{2,1}", (z / (1 - z * z), 1, {"Phi1": 1}), z * z, 2),
    ]
    # Feg(chi_i) = x^i: special when a = i, cospecial when A = i.
    fam_aA = {1: (0, 0), 2: (1, 2)}
    feg_b = {"Id": 0, "rho_{1,0}": 1, "rho_{2,0}": 2}
    out = []
    for name, deg, fr, fam in rows:
        a, A = fam_aA[fam]
        marker = "-"
        if name in feg_b:
            if feg_b[name] == a:
                marker = "special"
            elif feg_b[name] == A:
                marker = "cospecial"
        out.append({"name": name, "parsed": deg, "fr_text": str(fr), "family": fam, "marker": marker, "symbol": ""})
    return emit("Z3", 3, order_text(1, [3]), [], [], out, field)


def outputs():
    out = {"tables/cyclic3.uch": intro_table()}
    for key in ("Z3", "Z4", "G4", "G312"):
        out[f"tables/{key}.uch"] = source_table(key)[0]
    for key in ("G4", "G312"):
        out[f"schur/{key}.txt"] = schur_file(key)
    return out


if __name__ == "__main__":
    for rel, text in outputs().items():
        print("==", rel)
        print(text)
