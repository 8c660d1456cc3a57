#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes the bundled CNF problem corpus into corpus/{unsat,sat}."""

import argparse
import pathlib


def cnf(name, role, lits):
    return f"cnf({name}, {role}, {' | '.join(lits)}).\n"


class Problem:
    def __init__(self, name, comment):
        self.name = name
        self.lines = [f"% {comment}\n"]
        self.count = 0

    def axiom(self, *lits):
        self.count += 1
        self.lines.append(cnf(f"a{self.count}", "axiom", lits))

    def goal(self, *lits):
        self.count += 1
        self.lines.append(cnf(f"g{self.count}", "negated_conjecture", lits))

    def text(self):
        return "".join(self.lines)


def num(n, zero="zero"):
    t = zero
    for _ in range(n):
        t = f"s({t})"
    return t


def chain(n, distractors):
    p = Problem(f"chain{n:02d}" + ("_noise" if distractors else ""),
                f"implication chain of length {n}" + (" with side branches" if distractors else ""))
    p.axiom("p0(c)")
    for i in range(n):
        p.axiom(f"~p{i}(X)", f"p{i + 1}(X)")
        if distractors and i % 2 == 0:
            p.axiom(f"~p{i}(X)", f"q{i}(f(X))")
            p.axiom(f"~q{i}(X)", f"q{i}(g(X))")
    p.goal(f"~p{n}(c)")
    return p


def reach(n, extra):
    p = Problem(f"reach{n:02d}", f"path in a {n}-node graph with {extra} extra edges")
    for i in range(n - 1):
        p.axiom(f"edge(n{i}, n{i + 1})")
    for j in range(extra):
        a, b = (3 * j + 1) % n, (5 * j + 2) % n
        if a != b:
            p.axiom(f"edge(n{a}, n{b})")
    p.axiom("~edge(X, Y)", "path(X, Y)")
    p.axiom("~edge(X, Y)", "~path(Y, Z)", "path(X, Z)")
    p.goal(f"~path(n0, n{n - 1})")
    return p


def plus(a, b):
    p = Problem(f"plus_{a}_{b}", f"unary addition {a} + {b}")
    p.axiom("plus(zero, X, X)")
    p.axiom("~plus(X, Y, Z)", "plus(s(X), Y, s(Z))")
    p.goal(f"~plus({num(a)}, {num(b)}, {num(a + b)})")
    return p


def plus_exists(a, b):
    p = Problem(f"plus_find_{a}_{b}", f"exists Z with {a} + {b} = Z")
    p.axiom("plus(zero, X, X)")
    p.axiom("~plus(X, Y, Z)", "plus(s(X), Y, s(Z))")
    p.goal(f"~plus({num(a)}, {num(b)}, Z)")
    return p


def times(a, b):
    p = Problem(f"times_{a}_{b}", f"unary multiplication {a} * {b}")
    p.axiom("plus(zero, X, X)")
    p.axiom("~plus(X, Y, Z)", "plus(s(X), Y, s(Z))")
    p.axiom("times(zero, X, zero)")
    p.axiom("~times(X, Y, Z)", "~plus(Y, Z, W)", "times(s(X), Y, W)")
    p.goal(f"~times({num(a)}, {num(b)}, {num(a * b)})")
    return p


def even(n):
    p = Problem(f"even{n:02d}", f"parity of {n}")
    p.axiom("even(zero)")
    p.axiom("~even(X)", "odd(s(X))")
    p.axiom("~odd(X)", "even(s(X))")
    p.goal(f"~even({num(n)})")
    return p


def less(n):
    p = Problem(f"less{n:02d}", f"transitive order over {n} constants")
    for i in range(n - 1):
        p.axiom(f"lt(k{i}, k{i + 1})")
    p.axiom("~lt(X, Y)", "~lt(Y, Z)", "lt(X, Z)")
    p.goal(f"~lt(k0, k{n - 1})")
    return p


def family(depth):
    p = Problem(f"family{depth}", f"ancestor relation over {depth} generations")
    for i in range(depth):
        p.axiom(f"parent(m{i}, m{i + 1})")
        p.axiom(f"parent(m{i}, s{i})")
    p.axiom("~parent(X, Y)", "ancestor(X, Y)")
    p.axiom("~parent(X, Y)", "~ancestor(Y, Z)", "ancestor(X, Z)")
    p.axiom("~parent(X, Y)", "~parent(X, Z)", "sibling_or_self(Y, Z)")
    p.goal(f"~ancestor(m0, m{depth})")
    return p


def append_list(n):
    def lst(k):
        t = "nil"
        for i in reversed(range(k)):
            t = f"cons(e{i}, {t})"
        return t
    p = Problem(f"append{n}", f"list append of lengths {n} and 1")
    p.axiom("app(nil, L, L)")
    p.axiom("~app(T, L, R)", "app(cons(H, T), L, cons(H, R))")
    whole = "nil"
    for i in reversed(range(n + 1)):
        whole = f"cons(e{i}, {whole})"
    p.goal(f"~app({lst(n)}, cons(e{n}, nil), {whole})")
    return p


def pigeon(holes):
    pigeons = holes + 1
    p = Problem(f"pigeon{pigeons}_{holes}", f"{pigeons} pigeons in {holes} holes (ground)")
    for i in range(pigeons):
        p.axiom(*[f"in{i}_{h}" for h in range(holes)])
    for h in range(holes):
        for i in range(pigeons):
            for j in range(i + 1, pigeons):
                p.goal(f"~in{i}_{h}", f"~in{j}_{h}")
    return p


def cube(n):
    p = Problem(f"cube{n}", f"all {2 ** n} sign patterns over {n} atoms (ground)")
    for mask in range(2 ** n):
        lits = [("~" if mask >> k & 1 else "") + f"v{k}" for k in range(n)]
        if mask == 2 ** n - 1:
            p.goal(*lits)
        else:
            p.axiom(*lits)
    return p


def syllogism():
    p = Problem("syllogism", "all men are mortal")
    p.axiom("~man(X)", "mortal(X)")
    p.axiom("man(socrates)")
    p.goal("~mortal(socrates)")
    return p


def trivial():
    p = Problem("trivial", "a fact and its negation")
    p.axiom("p(a)")
    p.goal("~p(a)")
    return p


def nested(depth):
    p = Problem(f"nested{depth}", f"unification through {depth} nested terms")
    p.axiom("r(X, f(X))")
    p.axiom("~r(X, Y)", "~r(Y, Z)", "r2(X, Z)")
    p.axiom("~r2(X, Y)", "~r(Y, Z)", "r3(X, Z)")
    t = "a"
    for _ in range(depth):
        t = f"f({t})"
    p.goal(f"~r{depth}(a, {t})" if depth > 1 else "~r(a, f(a))")
    return p


def blocks():
    p = Problem("blocks", "stacking blocks above one another")
    p.axiom("on(b1, b2)")
    p.axiom("on(b2, b3)")
    p.axiom("on(b3, table)")
    p.axiom("on(b4, table)")
    p.axiom("~on(X, Y)", "above(X, Y)")
    p.axiom("~on(X, Y)", "~above(Y, Z)", "above(X, Z)")
    p.axiom("~above(X, table)", "grounded(X)")
    p.goal("~grounded(b1)")
    return p


def group_inverse():
    p = Problem("group_left", "group fragment with a product relation, no equality")
    p.axiom("prod(e, X, X)")
    p.axiom("prod(inv(X), X, e)")
    p.axiom("~prod(X, Y, U)", "~prod(U, Z, W)", "~prod(Y, Z, V)", "prod(X, V, W)")
    p.goal("~prod(inv(a), a, e)")
    return p


def group_assoc():
    p = Problem("group_assoc", "group fragment: inverse cancels on the left")
    p.axiom("prod(e, X, X)")
    p.axiom("prod(inv(X), X, e)")
    p.axiom("~prod(X, Y, U)", "~prod(Y, Z, V)", "~prod(U, Z, W)", "prod(X, V, W)")
    p.goal("~prod(inv(a), prod_ab, b)")
    p.axiom("prod(a, b, prod_ab)")
    return p


def unsat():
    ps = [trivial(), syllogism(), blocks(), nested(1), nested(2), nested(3)]
    ps += [chain(n, False) for n in (4, 8)]
    ps += [chain(n, True) for n in (4, 6, 8, 10, 12, 16)]
    ps += [reach(6, 3), reach(8, 4), reach(10, 5)]
    ps += [plus(2, 2), plus(3, 1), plus_exists(2, 3), times(2, 2)]
    ps += [even(4), even(8), less(4), less(5), family(3), family(5)]
    ps += [append_list(2), append_list(4), pigeon(2), cube(3), group_inverse()]
    ps += [chain(20, False), even(12), plus_exists(3, 3)]
    return ps


def sat():
    out = []
    p = Problem("sat_unreached", "the goal atom is never derivable")
    p.axiom("p(a)")
    p.axiom("~p(X)", "q(X)")
    p.goal("~r(a)")
    out.append(p)
    p = Problem("sat_cycle", "a finite cycle of implications without a contradiction")
    p.axiom("~p(X)", "q(X)")
    p.axiom("~q(X)", "p(X)")
    p.axiom("p(a)")
    p.goal("~s(a)")
    out.append(p)
    p = Problem("sat_graph", "no two-hop path between two components")
    for a, b in (("n0", "n1"), ("n1", "n2"), ("n3", "n4")):
        p.axiom(f"edge({a}, {b})")
    p.axiom("~edge(X, Y)", "~edge(Y, Z)", "hop2(X, Z)")
    p.goal("~hop2(n0, n4)")
    out.append(p)
    p = Problem("sat_ground", "a satisfiable ground clause set")
    p.axiom("v0", "v1")
    p.axiom("~v0", "v2")
    p.axiom("~v1", "v2")
    p.goal("~v0", "~v1")
    out.append(p)
    p = Problem("sat_types", "a type hierarchy that does not make a dog fly")
    p.axiom("dog(rex)")
    p.axiom("bird(tweety)")
    p.axiom("~dog(X)", "mammal(X)")
    p.axiom("~mammal(X)", "animal(X)")
    p.axiom("~bird(X)", "animal(X)")
    p.axiom("~bird(X)", "flies(X)")
    p.goal("~flies(rex)")
    out.append(p)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=pathlib.Path, nargs="?", default=pathlib.Path(__file__).parent.parent / "corpus")
    args = ap.parse_args()
    for sub, problems in (("unsat", unsat()), ("sat", sat())):
        d = args.out / sub
        d.mkdir(parents=True, exist_ok=True)
        for p in problems:
            (d / f"{p.name}.p").write_text(p.text())
    print(f"wrote {len(unsat())} unsatisfiable and {len(sat())} satisfiable problems to {args.out}")


if __name__ == "__main__":
    main()
