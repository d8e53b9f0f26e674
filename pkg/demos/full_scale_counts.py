"""Counts for databases far too large to build.

N = 2^1024 with k = 4: the schedule, the exact integer query and gate
counts per level, and every inequality the recursion promises, decided
with exact integers or rigorous intervals.  Then the log log N recipe at
N = 2^64 and the fixed-epsilon parameter choice.
"""

from gatesearch import estimator as est


def short(x):
    return str(x) if x < 10**12 else f"<{len(est.exact_str(x))} digits>"


def show(levels):
    for lv in levels:
        print(f"  level {lv.level}: n_i = {lv.n_i}, w = {short(lv.w)}, queries = {short(lv.queries)}")
        for c in lv.checks:
            verdict = {True: "holds", False: "FAILS", None: "n/a"}[c.holds]
            print(f"      {c.name:45s} {verdict}")


def main():
    for r in (2, 3):
        levels = est.estimate_recursive(1024, 4, r)
        print(f"N = 2^1024, k = 4, r = {r}, widths {[lv.n_i for lv in levels]}")
        show(levels)

    recipe = est.grover02_recipe(64)
    print(f"\nN = 2^64: k = {1 / recipe.k.exact}, m = {recipe.m}")
    levels = est.estimate_grover02(64)
    show(levels)
    print(f"  total queries {levels[-1].queries} vs sqrt(N) = {2**32}")

    n = 1 << 4096
    params = est.main_parameters(n, epsilon=1)
    print(f"\nfixed epsilon = 1, log N = 2^4096: r = {params.r}, k = {params.k}, c2 = {params.c}")
    for c in est.check_main(n, params.k, params.r, epsilon=1):
        print(f"  {c.name}: {float(c.lhs):.6f} <= {c.rhs}, {'holds' if c.holds else 'FAILS'}")


if __name__ == "__main__":
    main()
