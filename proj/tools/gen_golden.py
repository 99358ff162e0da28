#!/usr/bin/env python3
"""Writes data/golden_corpus.txt.

Expected values come from the closed-form partition formulas and exponent
formulas, evaluated here with plain Python integers and fractions. Nothing
is computed by the C++ library.
"""

import argparse
from fractions import Fraction
from pathlib import Path

A_RANGE = range(1, 7)
B_RANGE = range(1, 5)
M_RANGE = range(0, 5)


def blocks(*pairs):
    """(value, count) pairs to a sorted partition, zeros dropped."""
    out = []
    for value, count in pairs:
        if value > 0 and count > 0:
            out += [value] * count
    return sorted(out, reverse=True)


def fmt_part(p):
    return "[" + ",".join(map(str, p)) + "]"


def compact(p):
    runs = []
    for v in p:
        if runs and runs[-1][0] == v:
            runs[-1][1] += 1
        else:
            runs.append([v, 1])
    return "[" + ",".join(str(v) if c == 1 else f"{v}^{c}" for v, c in runs) + "]"


def fmt_q(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_qs(v):
    return "{" + ",".join(fmt_q(x) for x in v) + "}"


def param(case, a, b, m):
    """Canonical parameter text and rank for a case."""
    if case == "I":
        terms = [f"{a}:{2 * b + 1}:O#t"] + [f"1:1:O#x{i}" for i in range(1, 2 * m + 2 - a)]
        n = a * b + m
    elif case == "II":
        terms = [f"{a}:{2 * b + 1}:O#t", f"{a}:1:O#t"] + [f"1:1:O#x{i}" for i in range(1, 2 * m + 2)]
        n = a * (b + 1) + m
    else:
        terms = [f"{a}:{2 * b}:S#t"] + [f"1:1:O#x{i}" for i in range(1, 2 * m + 2)]
        n = a * b + m
    return " + ".join(terms), n


def applicable(case, a, m):
    if case == "I":
        return a <= 2 * m + 1
    if case == "III":
        return a % 2 == 0
    return True


def eta_closed(case, a, b, m):
    if case == "I":
        if a == 2 * m + 1:
            return blocks((a, 2 * b), (2 * m, 1))
        if a % 2 == 0:
            return blocks((2 * m, 1), (a, 2 * b))
        return blocks((2 * m, 1), (a + 1, 1), (a, 2 * b - 2), (a - 1, 1))
    if case == "II":
        if a % 2 == 0:
            return blocks((2 * m + 2 * a, 1), (a, 2 * b))
        return blocks((2 * m + 2 * a, 1), (a + 1, 1), (a, 2 * b - 2), (a - 1, 1))
    return blocks((a + 2 * m, 1), (a, 2 * b - 1))


def p_closed(case, a, b, m):
    if case == "I":
        return blocks((2 * b + 1, a), (1, 2 * m + 1 - a))
    if case == "II":
        return blocks((2 * b + 1, a), (1, 2 * m + 1 + a))
    return blocks((2 * b, a), (1, 2 * m + 1))


def speh(b):
    return [Fraction(1 - b + 2 * j, 2) for j in range(b)]


def rows():
    out = []

    def row(ident, tags, argv, expected):
        out.append(f"{ident} | {tags} | {argv} | {expected}")

    tag_of = {"I": "case1", "II": "case2", "III": "case3"}
    for case in ("I", "II", "III"):
        for a in A_RANGE:
            for b in B_RANGE:
                for m in M_RANGE:
                    if not applicable(case, a, m):
                        continue
                    text, n = param(case, a, b, m)
                    t = tag_of[case]
                    row(f"eta-{t}-{a}-{b}-{m}", f"eta grid {t}", f'arthur eta --n {n} "{text}"',
                        fmt_part(eta_closed(case, a, b, m)))
                    row(f"ppsi-{t}-{a}-{b}-{m}", f"p-psi grid {t}", f'arthur p-psi --n {n} "{text}"',
                        fmt_part(p_closed(case, a, b, m)))

    # Expansion identity, odd a <= 2m.
    for a in A_RANGE:
        for b in B_RANGE:
            for m in M_RANGE:
                if a % 2 == 1 and a <= 2 * m:
                    src = blocks((2 * m, 1), (a, 2 * b))
                    want = blocks((2 * m, 1), (a + 1, 1), (a, 2 * b - 2), (a - 1, 1))
                    row(f"expand-{a}-{b}-{m}", "expansion case1 identity", f'partition expand "{compact(src)}"',
                        fmt_part(want))

    # Collapse step of the second case, odd a.
    for a in A_RANGE:
        for b in B_RANGE:
            for m in M_RANGE:
                if a % 2 == 1:
                    src = blocks((2 * b + 1, a), (1, 2 * m + a))
                    want = blocks((2 * b + 1, a - 1), (2 * b, 1), (2, 1), (1, 2 * m + a - 1))
                    row(f"collapse-{a}-{b}-{m}", "collapse case2 identity", f'partition collapse "{compact(src)}"',
                        fmt_part(want))

    # Exponents.
    for b in range(1, 21):
        e = speh(b)
        row(f"speh-{b}", "exponents speh", f"exponents speh --b {b}", f"{fmt_qs(e)} max={fmt_q(max(e))}")
        s = Fraction(-b, 2)
        tw = [x + s for x in e]
        row(f"twist-{b}", "exponents twist", f'exponents twist --s {fmt_q(s)} "{fmt_qs(e)}"',
            f"{fmt_qs(tw)} max={fmt_q(max(tw))}")
        row(f"sqint-{b}", "exponents sq-int", f'exponents sq-int "{fmt_qs(tw)}"', "true")
        if b >= 2:
            e1 = speh(b - 1)
            tw1 = [x + s for x in e1]
            row(f"twist-short-{b}", "exponents twist", f'exponents twist --s {fmt_q(s)} "{fmt_qs(e1)}"',
                f"{fmt_qs(tw1)} max={fmt_q(max(tw1))}")

    # Constant-term profiles at the boundary indices.
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            m = 2
            i = b
            twist = Fraction(-(b + 1), 2)
            row(f"profile-case1-{a}-{b}", "profile case1", f"descent profile --family I --a {a} --b {b} --m {m} --i {i}",
                f"CaseI(a={a},b={b},m={m}) depth={b} ; i={i} gl={a * i} twist={fmt_q(twist)} remainder=sigma")
            row(f"profile-case2-{a}-{b}", "profile case2",
                f"descent profile --family II --a {a} --b {b} --m {m} --i {i}",
                f"CaseII(a={a},b={b},m={m}) depth={b + 1} ; i={i} gl={a * i} twist={fmt_q(twist)} "
                f"remainder=E(tau x sigma)")
    for a in (2, 4):
        for b in (2, 3):
            m = 1
            row(f"profile-case3-{a}-{b}", "profile case3",
                f"descent profile --family III --a {a} --b {b} --m {m} --i 1",
                f"CaseIII(a={a},b={b},m={m}) depth={b} ; i=1 gl={a} twist={fmt_q(Fraction(-(2 * b - 1), 2))} "
                f"remainder=CaseIII(a={a},b={b - 1},m={m})")

    # Single examples.
    row("bvdual-333", "duality", 'bv-dual "[3^3]"', "[3,3,2]")
    row("transpose-331111", "transpose case2", 'partition transpose "[3,3,1,1,1,1]"', "[6,2,2]")
    row("bvdual-33111", "duality case1", 'bv-dual "[3,3,1,1,1]"', "[4,2,2]")
    row("collapse-3111", "collapse case2", 'partition collapse "[3,1,1,1]"', "[2,2,1,1]")
    row("expand-411", "expansion case1", 'partition expand "[4,1,1]"', "[4,2]")
    row("compose-4-22", "compose", 'partition compose --head 4 "[2,2]"', "[4,2,2]")
    row("compose-6-22", "compose", 'partition compose --head 6 "[2,2]"', "[6,2,2]")
    row("compare-lex", "compare", 'partition compare --order lex "[6,1,1]" "[4,2,2]"', "Greater")
    row("compact-out", "format", 'partition transpose --compact "[2,2,2]"', "[3^2]")
    row("classify-3", "case1", 'arthur classify --n 4 "3:3:O"', "CaseI a=3 b=1 m=1")
    row("classify-2", "case2", 'arthur classify --n 5 "2:3:O#t + 2:1:O#t + 1:1:O#a + 1:1:O#b + 1:1:O#c"',
        "CaseII a=2 b=1 m=1")
    row("classify-33", "case3", 'arthur classify --n 3 "2:2:S + 1:1:O + 1:1:O + 1:1:O"', "CaseIII a=2 b=1 m=1")
    row("bound-part3", "bound case1", 'conjecture check --n 4 --order dominance "2:3:O + 1:1:O + 1:1:O + 1:1:O" "[4,2,2]"',
        "AchievesPart3 order=Dominance eta=[4,2,2]")
    row("reduce-case1", "reduce case1", 'arthur reduce --n 5 --l 1 "2:5:O#t + 1:1:O#x1"', "2:3:O#t + 1:1:O#x1")
    row("reduce-case3", "reduce case3", 'arthur reduce --n 3 --l 1 "2:2:S#t + 1:1:O#x1 + 1:1:O#x2 + 1:1:O#x3"',
        "1:1:O#x1 + 1:1:O#x2 + 1:1:O#x3")
    row("weights-33", "roots", 'roots weights --arrangement paper "[3,3]"', "(2,0,-2,2,0,-2)")
    row("vp2-22", "roots", 'roots vp2 --arrangement dominant "[2,2]"', "{e1+e2,2e1,2e2}")
    row("whittaker-5", "whittaker case1", "descent whittaker --family I --a 3 --b 1 --m 2 --p 5", "Vanishes")
    row("whittaker-4", "whittaker case1", "descent whittaker --family I --a 3 --b 1 --m 2 --p 4", "EqualsShifted")
    row("chain-2", "exponents", 'exponents chain --b 2 "{1/4,-1/4}"', "true")

    # Rejected inputs.
    row("reject-parity", "reject", 'arthur validate --n 3 "2:3:S"', "exit=1")
    row("reject-meta-top", "reject profile", "descent profile --family meta --k 1 --b 2 --i 2", "exit=1")
    row("reject-chain", "reject exponents", 'exponents chain --b 1 "{3/5}"', "exit=1")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "golden_corpus.txt"))
    args = ap.parse_args()
    lines = ["# id | tags | command | expected output (lines joined by ' ; ', or exit=N)",
             "# Generated by tools/gen_golden.py."]
    lines += rows()
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"{len(lines) - 2} rows written to {args.out}")


if __name__ == "__main__":
    main()
