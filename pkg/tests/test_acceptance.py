"""End-to-end acceptance criteria, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line, and the lines are
repeated in the pytest terminal summary. Run with::

    pytest tests/test_acceptance.py -s
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from betaline import checks, cli, harness, refmath, sampling
from betaline.core import ShapeParam, alpha_weight, sample_p_inverse_pair
from betaline.streams import DEFAULT_SEED, UniformStream
from conftest import ACCEPTANCE_LINES


def record(number, title, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert ok, line


def exact_moment(a, k):
    m = Fraction(1)
    a = Fraction(a)
    for j in range(k):
        m *= (a + j) / (j + 1)
    return m


def test_criterion_1_moment_table(tmp_path):
    out = tmp_path / "table.csv"
    t0 = time.perf_counter()
    code = cli.main(["table", "--n", str(10**6), "--output", str(out)])
    seconds = time.perf_counter() - t0
    rows = [r for r in out.read_text().splitlines() if not r.startswith("#")]
    header, body = rows[0], [r.split(",") for r in rows[1:]]
    zs, theo_ok = [], True
    for row in body:
        a = float(row[0])
        for k in (1, 2, 3):
            theo = row[4 * k - 2]
            theo_ok &= theo == f"{float(exact_moment(a, k)):.6f}"
            zs.append(abs(float(row[4 * k])))
    within3 = sum(z <= 3 for z in zs)
    ok = (
        code == 0
        and header == cli.TABLE_HEADER
        and len(body) == 19
        and len(zs) == 57
        and within3 >= 54
        and max(zs) <= 5
        and theo_ok
        and seconds < 60
    )
    record(1, "moment table n=1e6", ok, f"{within3}/57 cells |z|<=3, max |z|={max(zs):.2f}, {seconds:.1f}s")


def test_criterion_2_mixture_oracle():
    worst = 0.0
    for a in (0.1, 0.3, 0.5, 0.7, 0.9):
        s = ShapeParam(a)
        for b in np.linspace(0.01, 0.99, 51).tolist():
            worst = max(worst, abs(refmath.mixture_marginal_oracle(s, b) - refmath.target_density(s, b).value))
    record(2, "mixture marginal equals target density", worst < 1e-5, f"max abs diff {worst:.2e}")


def test_criterion_3_alpha_bounds_and_symmetry():
    u = UniformStream(DEFAULT_SEED, 9003).block(10**6, 2)
    bad, worst = 0, 0.0
    for a, p in u.tolist():
        w = alpha_weight(ShapeParam(a), p)
        bad += not 0.0 < w < 1.0
        worst = max(worst, abs(alpha_weight(ShapeParam(1.0 - a), 1.0 - p) - (1.0 - w)))
    record(3, "alpha in (0,1) and reflection symmetry on 1e6 pairs", bad == 0 and worst <= 1e-12,
           f"{bad} out of range, max symmetry error {worst:.2e}")


def test_criterion_4_alpha_force_identity():
    u = UniformStream(DEFAULT_SEED, 9004).block(10**4, 2)
    worst = 0.0
    for a, b in u.tolist():
        s = ShapeParam(a)
        w = alpha_weight(s, b)
        worst = max(worst, abs(w - checks.forced_weight(s, b)) / w)
    record(4, "derivative-matching identity on 1e4 points", worst <= 1e-12, f"max rel diff {worst:.2e}")


def test_criterion_5_roundtrip_and_variants():
    worst = 0.0
    for a in (0.05, 0.5, 0.95):
        s = ShapeParam(a)
        for i in range(1000):
            u = (i + 0.5) / 1000
            worst = max(worst, abs(refmath.proposal_cdf(s, *sample_p_inverse_pair(s, u)) - u))
    ks = {a: harness.compare_variants(a, 10**5) for a in (0.05, 0.5, 0.95)}
    ok = worst < 1e-10 and all(r.passed for r in ks.values())
    ds = ", ".join(f"a={a}: D={r.statistic:.4f}" for a, r in ks.items())
    record(5, "proposal CDF roundtrip and three- vs two-uniform KS", ok, f"roundtrip {worst:.1e}; {ds}")


def test_criterion_6_families():
    n = 10**6
    worst = 0.0
    for i in range(1, 10):
        c = i / 10
        zm, zv = harness.mean_variance_z(sampling.gamma(c, n, stream_id=600 + i).values, c, c)
        worst = max(worst, abs(zm), abs(zv))
    for j, (a, b) in enumerate([(0.3, 2.0), (1.5, 0.5), (0.5, 0.5)]):
        worst = max(worst, abs(harness.mean_z(sampling.beta(a, b, n, stream_id=620 + j).values, a / (a + b))))
    for j, alphas in enumerate([(0.3, 0.5, 0.2), (0.1, 0.1, 0.9), (0.9, 0.8, 0.7)]):
        x = sampling.dirichlet(alphas, n, stream_id=640 + j).values
        total = sum(alphas)
        for i, c in enumerate(alphas):
            worst = max(worst, abs(harness.mean_z(x[:, i], c / total)))
    record(6, "Gamma, Beta and Dirichlet moments at n=1e6", worst <= 4, f"max |z| {worst:.2f}")


def test_criterion_7_negative_control():
    stats = {}
    for i in range(1, 10):
        a = i / 10
        r = harness.beta_sym_ks(sampling.proposal(a, 10**5, stream_id=700 + i).values, a)
        stats[a] = math.sqrt(r.n) * r.statistic
    caught = [a for a, v in stats.items() if v >= harness.kolmogorov_critical(harness.DEFAULT_LEVEL)]
    record(7, "uncorrected proposal rejected by KS", len(caught) == 9,
           f"{len(caught)}/9 rejected, min sqrt(n) D {min(stats.values()):.1f}")


@pytest.mark.parametrize("family_args", [["--family", "beta-sym", "--a", "0.37"]])
def test_criterion_8_determinism(tmp_path, family_args):
    argv_sets = [
        family_args,
        ["--family", "gamma", "--c", "0.2", "--variant", "three-uniform"],
        ["--family", "beta", "--a", "1.5", "--b", "0.5"],
        ["--family", "dirichlet", "--alphas", "0.3,0.5,0.2"],
    ]
    same = True
    for j, extra in enumerate(argv_sets):
        files = []
        for run in ("first", "second"):
            path = tmp_path / f"{j}-{run}.csv"
            assert cli.main(["sample", "--n", "10000", "--seed", "99", *extra, "-o", str(path)]) == 0
            files.append(path.read_bytes())
        same &= files[0] == files[1]
    record(8, "identical seeds give bit-identical sample files", same, f"{len(argv_sets)} families compared")
