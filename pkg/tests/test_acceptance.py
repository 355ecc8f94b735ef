"""Acceptance suite: one test per criterion, summarised as PASS/FAIL lines at the end of the run."""

import random
import time

import pytest

from algebra_samples import random_monomial_algebras
from commutator_suite import run_partition
from golden import CI243, CI444, MONO
from nilcomm import commutator as comm
from nilcomm import lefschetz as lef
from nilcomm import cli
from nilcomm.algebra import ArtinianAlgebra
from nilcomm.errors import NotGorensteinFlagged
from nilcomm.linalg import nilpotent_jordan_type, rank
from nilcomm.partitions import jordan_first, partitions_of

SAMPLING = lef.SamplingPolicy()


def build(example):
    return ArtinianAlgebra.from_strings(example["generators"], example["variables"])


def summaries(modules):
    return [(u.trimmed_hilbert, u.shift) for u in modules]


def detail(request, text):
    request.node.criterion_detail = text
    print(text)


@pytest.mark.criterion(1, "quadric-quartic-cubic complete intersection end to end (Jordan type, CSMs, 0+2+16=18, WLP, SLP)")
def test_complete_intersection_243(request):
    a = build(CI243)
    assert sum(a.hilbert) == 24 and a.hilbert == CI243["hilbert"]
    t, d = lef.jordan_type_of(a, "z")
    assert t.parts == CI243["z_type"] and d.parts == CI243["z_dual"]
    q = a.quotient_by(["z"])
    assert (q.dim, q.hilbert) == (CI243["quotient_dim"], CI243["quotient_hilbert"])
    assert summaries(lef.central_simple_modules(a, "z")[0]) == CI243["u_hilbert"]
    cert = lef.wlp_certificate(a, None, "z", SAMPLING)
    assert (cert.block_ranks, cert.rank_z, cert.bound) == (CI243["block_ranks"], 16, 18)
    assert cert.cosperner == lef.cosperner(a) == 18
    assert cert.verdict == lef.CERTIFIED_YES
    assert lef.csm_slp_implication(a, "z", SAMPLING).verdict == lef.CERTIFIED_YES
    detail(request, f"{cert.breakdown()} = CoSperner {cert.cosperner}")


@pytest.mark.criterion(2, "three-quartic complete intersection end to end (dual partition, fine blocks, 0+1+3+48=52, WLP, SLP)")
def test_complete_intersection_444(request):
    a = build(CI444)
    t, d = lef.jordan_type_of(a, "z")
    assert d.parts == CI444["z_dual"]
    us, _ = lef.central_simple_modules(a, "z")
    assert tuple(u.dim for u in us) == CI444["fine_sizes"]
    cert = lef.wlp_certificate(a, None, "z", SAMPLING)
    assert (cert.block_ranks, cert.rank_z, cert.bound) == (CI444["block_ranks"], 48, 52)
    assert cert.cosperner == lef.cosperner(a) == 52
    assert cert.verdict == lef.CERTIFIED_YES
    assert lef.csm_slp_implication(a, "z", SAMPLING).verdict == lef.CERTIFIED_YES
    detail(request, f"{cert.breakdown()} = CoSperner {cert.cosperner}")


@pytest.mark.criterion(3, "four-variable monomial algebra along z and along w (0+2+8 = 1+4+5 = 10), SLP route refused")
def test_monomial_algebra_two_routes(request):
    a = build(MONO)
    lines = []
    for name, key in (("z", "z"), ("w", "w")):
        cert = lef.wlp_certificate(a, None, name, SAMPLING)
        assert cert.block_ranks == MONO[f"{key}_block_ranks"]
        assert cert.rank_z == MONO[f"{key}_rank"]
        assert cert.bound == cert.cosperner == MONO["cosperner"]
        assert cert.verdict == lef.CERTIFIED_YES
        lines.append(f"{name}: {cert.breakdown()}")
    assert not a.is_gorenstein()
    with pytest.raises(NotGorensteinFlagged):
        lef.csm_slp_implication(a, "z", SAMPLING)
    detail(request, "; ".join(lines))


@pytest.mark.criterion(4, "binomial families: WLP certified via the CSM route for n in 2..4, alpha in 1..3; series recurrences n<=10")
def test_binomial_families(request):
    count = 0
    for kind in ("squares", "path"):
        for n in (2, 3, 4):
            for alpha in (1, 2, 3):
                a = lef.family_algebra(kind, n, alpha)
                series, inner = lef.binomial_family_series(n, alpha), lef.binomial_family_series(n - 2, alpha)
                assert a.hilbert == series.h
                z = a.form(a.ring.variables[-1])
                us, _ = lef.central_simple_modules(a, z)
                assert [u.trimmed_hilbert for u in us] == [inner.h, inner.h]
                cert = lef.wlp_certificate(a, None, z, SAMPLING)
                # rank G1^3 = dim U1 - s - s' - s'',  rank G2 = dim U2 - s  (all at n - 2)
                assert cert.block_ranks == [us[0].dim - inner.s - inner.s1 - inner.s2, us[1].dim - inner.s]
                assert cert.rank_z == 2 ** (n - 1) * alpha
                assert cert.bound == 2 ** n * alpha - series.s == lef.cosperner(a)
                assert cert.verdict == lef.CERTIFIED_YES
                count += 1
    for alpha in range(1, 5):
        s = {n: lef.binomial_family_series(n, alpha) for n in range(0, 11)}
        for n in range(1, 11):
            assert s[n].s == s[n - 1].s + s[n - 1].s1
        for n in range(2, 11):
            assert s[n].s == 2 * s[n - 2].s + s[n - 2].s1 + s[n - 2].s2
    detail(request, f"{count} algebras certified; recurrences checked for alpha <= 4")


@pytest.mark.criterion(5, "commutator structure suite over all partitions of n <= 8, 25 seeded instances each, under 60 s")
def test_commutator_structure_suite(request):
    start = time.perf_counter()
    partitions = 0
    for n in range(1, 9):
        for t in partitions_of(n):
            run_partition(t, random.Random(f"acceptance/{t.parts}"), instances=25)
            partitions += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    detail(request, f"{partitions} partitions x 25 instances in {elapsed:.1f} s")


@pytest.mark.criterion(6, "associated graded ring and rank deformation: partitions n <= 8 and random monomial algebras, dim <= 30")
def test_gr_and_deformation_suite(request):
    """The deformation inequality holds for all but finitely many lambda.

    For each instance the generic ranks of both pencils are certified exactly;
    the sampled lambda in {1..5} where the pointwise inequality fails are counted,
    and each must be a value where rank(M + lambda J) dips below its generic rank.
    """
    instances = exceptional = 0
    for n in range(1, 9):
        for t in partitions_of(n):
            rng = random.Random(f"acceptance-deform/{t.parts}")
            j = jordan_first(t)
            for _ in range(25):
                rep = lef.rank_deformation_check(comm.random_nilpotent_element(t, rng), j, t, SAMPLING)
                assert rep.generic_certified and rep.holds
                instances += 1
                exceptional += len(rep.exceptional_lambdas)
    algebras = random_monomial_algebras("acceptance-gr", 40)
    for a in algebras:
        assert a.dim <= 30
        z = a.form(a.ring.variables[-1])
        gr = lef.gr_algebra(a, z)
        assert nilpotent_jordan_type(gr.star_matrix(z)) == nilpotent_jordan_type(a.mult_matrix(z))
        assert gr.kernel_dimension_direct() == gr.kernel_dimension_by_layers()
        for y in lef._independent_samples(a, z, lef.SamplingPolicy(samples=3), "gr"):
            if gr.filtration_order(y) != 0:
                continue
            assert gr.star_matrix(y) == gr.truncation(y)
            rep = lef.rank_deformation_check(gr.frame.in_frame(y), jordan_first(gr.partition), gr.partition, SAMPLING)
            assert rep.generic_certified and rep.holds
            instances += 1
            exceptional += len(rep.exceptional_lambdas)
    detail(request, f"{instances} pencils with generic inequality certified; {len(algebras)} algebras; "
                    f"{exceptional} isolated sampled lambda where the pointwise inequality fails, all rank dips")


@pytest.mark.criterion(7, "discrepancy guard: rank of multiplication by z in the quadric-quartic-cubic example is 16, not 14")
def test_rank_of_z_is_sixteen(request):
    # A circulating value of 14 contradicts the certificate bound 0 + 2 + 16 = 18 (criterion 1)
    # and the Jordan type 5^4 1^4 (rank = 24 - 8 = 16).  This test must fail if the
    # expectation is edited to 14.
    a = build(CI243)
    r = rank(a.mult_matrix("z"))
    assert r == CI243["rank_z"] == 16
    assert r != CI243["misprinted_rank_z"]
    assert r == a.dim - len(CI243["z_type"])
    detail(request, f"rank = {r}")


@pytest.mark.criterion(8, "generic claims are sample-based and every report carries its sampling metadata")
def test_reports_carry_sampling_metadata(request, tmp_path):
    job = cli.load_job(cli.Path(__file__).resolve().parent.parent / "jobs" / "ci_quadric_quartic_cubic.ini")
    report = cli.run(job)
    expected = job.sampling.to_dict()
    assert report["sampling"] == expected
    assert report["wlp"]["sampling"] == expected and report["slp"]["sampling"] == expected
    assert report["wlp"]["general_form"]["sampling"]["seed"] == job.sampling.seed
    assert any("seeded samples" in note for note in report["notes"])
    general = lef.general_form_analysis(build(CI243), SAMPLING)
    assert general.sampling == SAMPLING.to_dict() and general.notes
    # a certified-no is never produced by sampling alone
    gf2 = ArtinianAlgebra.from_strings(["x^2", "y^2"], "xy", cli.GF(2))
    assert lef.general_form_analysis(gf2, SAMPLING).slp_verdict == lef.UNDETERMINED
    detail(request, f"seed {expected['seed']}, lambdas {expected['lambdas']}, {expected['samples']} samples")
