"""Finite-horizon checks of the two sequence lemmas.

Converging triples are generated around the proximal pair; the checks report
the settling indices they find. Holding one sequence away from the proximal
point breaks a hypothesis, and the checker says so instead of claiming a
counterexample.
"""
from proxima import (
    ProximalPair,
    SequenceTriple,
    builtin_problem,
    check_lemma_cauchy,
    check_lemma_close,
    generate_converging_triple,
)

problem = builtin_problem("paper-example")
sp = problem.space
pair = ProximalPair(sp.point(-1, 0), sp.point(1, 0), 2.0)

for seed in range(5):
    t = generate_converging_triple(problem.omega, problem.delta, pair, length=50, seed=seed)
    close = check_lemma_close(t, 2.0, [0.1, 0.01, 0.001])
    cauchy = check_lemma_cauchy(t.xs, t.rhos, t.thetas, 2.0, 0.05)
    print(f"seed {seed}: close {close.status} R={close.indices}  "
          f"cauchy {cauchy.status} M1={cauchy.indices.get('M1')}")

t = generate_converging_triple(problem.omega, problem.delta, pair, seed=0)
stuck = (sp.point(-1, 0.5),) * t.length
v = check_lemma_close(SequenceTriple(t.xs, stuck, t.thetas), 2.0, [0.1])
print(f"\nrho held at (-1, 0.5): {v.status} ({v.detail})")
