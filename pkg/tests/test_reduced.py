import numpy as np
import pytest

from rgmat import (ConvergenceError, DirectedGraph, GoogleOperator,
                   SubsetSpec, compute_gpr, compute_gqr, extract_grr,
                   oracle_reduce, pagerank, reduce, scatter_eigenpair)
from rgmat.dense import rank_one_check, solve

from conftest import all_dangling, random_graph, two_cycle


def make_case(rng, n, n_r, alpha=0.85, avg_deg=5.0):
    g = random_graph(rng, n, avg_deg)
    sub = SubsetSpec(rng.choice(n, size=n_r, replace=False), n)
    return GoogleOperator(g, alpha), sub


def dense_blocks(op, sub):
    g = op.to_dense()
    r, s = sub.members, sub.complement
    return (g[np.ix_(r, r)], g[np.ix_(r, s)],
            g[np.ix_(s, r)], g[np.ix_(s, s)])


class TestWorkedTwoCycle:
    """Complete analytic decomposition of the 2-cycle with subset {0}."""

    @pytest.fixture
    def dec(self):
        op = GoogleOperator(two_cycle(), 0.85)
        return reduce(op, SubsetSpec(np.array([0]), 2))

    def test_components(self, dec):
        assert abs(dec.G_rr[0, 0] - 0.075) < 1e-15
        assert abs(dec.G_pr[0, 0] - 0.925) < 1e-15
        assert abs(dec.G_qr[0, 0]) < 1e-15
        assert abs(dec.lambda_c - 0.075) < 1e-15

    def test_total_is_stochastic(self, dec):
        assert abs(dec.G_R[0, 0] - 1.0) < 1e-14

    def test_weights(self, dec):
        assert abs(dec.W_rr - 0.075) < 1e-15
        assert abs(dec.W_pr - 0.925) < 1e-15
        assert dec.W_qr == 0.0


class TestExtractGrr:
    def test_two_cycle(self):
        op = GoogleOperator(two_cycle(), 0.85)
        grr = extract_grr(op, SubsetSpec(np.array([0]), 2))
        assert grr == pytest.approx(np.array([[0.075]]), abs=1e-15)

    def test_empty_graph_dangling_columns(self):
        op = GoogleOperator(all_dangling(4), 0.85)
        grr = extract_grr(op, SubsetSpec(np.array([2, 0]), 4))
        assert grr == pytest.approx(0.25 * np.ones((2, 2)), abs=1e-15)

    def test_matches_dense_slice(self, rng):
        op, sub = make_case(rng, 30, 4)
        g_rr, _, _, _ = dense_blocks(op, sub)
        assert np.array_equal(extract_grr(op, sub), g_rr)


class TestComputeGpr:
    def test_one_by_one_worked(self):
        op = GoogleOperator(two_cycle(), 0.85)
        sub = SubsetSpec(np.array([0]), 2)
        eig = scatter_eigenpair(op, sub)
        g_pr, pt_r, pt_l = compute_gpr(op, sub, eig)
        assert g_pr == pytest.approx(np.array([[0.925]]), abs=1e-15)
        assert pt_r == pytest.approx([0.925], abs=1e-15)
        assert pt_l == pytest.approx([0.925], abs=1e-15)

    def test_rank_one_by_construction(self, rng):
        op, sub = make_case(rng, 70, 6)
        eig = scatter_eigenpair(op, sub, tol=1e-13)
        g_pr, _, _ = compute_gpr(op, sub, eig)
        assert rank_one_check(g_pr) < 1e-13 * g_pr.max() ** 2

    def test_matches_dense_projector_route(self, rng):
        op, sub = make_case(rng, 60, 5)
        eig = scatter_eigenpair(op, sub, tol=1e-13)
        _, g_rs, g_sr, _ = dense_blocks(op, sub)
        proj = np.outer(eig.psi_R, eig.psi_L)
        expect = g_rs @ proj @ g_sr / eig.one_minus_lambda_c
        g_pr, _, _ = compute_gpr(op, sub, eig)
        assert np.abs(g_pr - expect).max() < 1e-12

    def test_nonpositive_gap_rejected(self):
        op = GoogleOperator(two_cycle(), 0.85)
        sub = SubsetSpec(np.array([0]), 2)
        eig = scatter_eigenpair(op, sub)
        eig.one_minus_lambda_c = 0.0
        with pytest.raises(ValueError):
            compute_gpr(op, sub, eig)


class TestComputeGqr:
    def test_projector_annihilates_one_dim_space(self):
        op = GoogleOperator(two_cycle(), 0.85)
        sub = SubsetSpec(np.array([0]), 2)
        eig = scatter_eigenpair(op, sub)
        g_qr, terms, _ = compute_gqr(op, sub, eig)
        assert g_qr == pytest.approx(np.array([[0.0]]), abs=1e-15)
        assert terms.tolist() == [0]

    def test_rank_one_block_terminates_immediately(self):
        # uniform G_sr column is parallel to psi_R, so Q_c kills it
        op = GoogleOperator(all_dangling(3), 0.85)
        sub = SubsetSpec(np.array([0]), 3)
        eig = scatter_eigenpair(op, sub)
        g_qr, terms, _ = compute_gqr(op, sub, eig)
        assert np.abs(g_qr).max() < 1e-15
        assert terms.tolist() == [0]

    def test_matches_dense_inverse_oracle(self, rng):
        op, sub = make_case(rng, 60, 5)
        eig = scatter_eigenpair(op, sub, tol=1e-13)
        _, g_rs, g_sr, g_ss = dense_blocks(op, sub)
        indirect = g_rs @ solve(np.eye(sub.n_s) - g_ss, g_sr)
        # independent projector from the dense eigendecomposition
        vals, vecs = np.linalg.eig(g_ss)
        k = int(np.argmax(vals.real))
        psi_r = vecs[:, k].real
        psi_r /= psi_r.sum()
        vals_l, vecs_l = np.linalg.eig(g_ss.T)
        kl = int(np.argmax(vals_l.real))
        psi_l = vecs_l[:, kl].real
        psi_l /= psi_l @ psi_r
        g_pr_dense = (g_rs @ np.outer(psi_r, psi_l) @ g_sr
                      / (1.0 - vals[k].real))
        expect = indirect - g_pr_dense
        g_qr, _, _ = compute_gqr(op, sub, eig)
        assert np.abs(g_qr - expect).max() < 1e-10

    def test_threads_do_not_change_bits(self, rng):
        op, sub = make_case(rng, 90, 7)
        eig = scatter_eigenpair(op, sub, tol=1e-13)
        seq, terms1, _ = compute_gqr(op, sub, eig, threads=1)
        par, terms8, _ = compute_gqr(op, sub, eig, threads=8)
        assert np.array_equal(seq, par)
        assert np.array_equal(terms1, terms8)

    def test_series_budget_error_reports_column(self, rng):
        op, sub = make_case(rng, 50, 3)
        eig = scatter_eigenpair(op, sub, tol=1e-13)
        with pytest.raises(ConvergenceError, match="column"):
            compute_gqr(op, sub, eig, max_terms=1)


class TestReduce:
    def test_matches_oracle(self, rng):
        op, sub = make_case(rng, 200, 8)
        dec = reduce(op, sub, tol=1e-13)
        assert np.abs(dec.G_R - oracle_reduce(op, sub)).max() < 1e-10

    def test_column_sums(self, rng):
        op, sub = make_case(rng, 150, 6)
        dec = reduce(op, sub, tol=1e-13)
        assert np.abs(dec.G_R.sum(axis=0) - 1.0).max() < 1e-10

    def test_closure_and_weights(self, rng):
        op, sub = make_case(rng, 100, 5)
        dec = reduce(op, sub, tol=1e-13)
        total = dec.G_rr + dec.G_pr + dec.G_qr
        assert np.abs(total - dec.G_R).max() < 1e-13
        assert abs(dec.W_rr + dec.W_pr + dec.W_qr - 1.0) < 1e-12
        assert abs(dec.W_qrd + dec.W_qrnd - dec.W_qr) < 1e-15
        assert dec.W_qrd == pytest.approx(
            np.trace(dec.G_qr) / sub.n_r, abs=1e-15)

    def test_negative_weight_negligible_on_shipped_fixtures(self):
        # the "negligible negatives" regime needs a large sparse network
        # whose scattering space dominates the subset, as in real data;
        # small uniform random graphs sit outside it
        from conftest import preferential_attachment
        for seed, n, n_r in ((2, 5000, 8), (2012, 10000, 20)):
            rng = np.random.default_rng(seed)
            g = preferential_attachment(rng, n, m=5)
            sub = SubsetSpec(rng.choice(n, size=n_r, replace=False), n)
            dec = reduce(GoogleOperator(g, 0.85), sub, tol=1e-13)
            assert dec.negative_weight <= 1e-4 * n_r

    def test_negative_entries_retained_and_recorded(self, rng):
        op, sub = make_case(rng, 80, 4)
        dec = reduce(op, sub, tol=1e-13)
        negatives = dec.G_qr[dec.G_qr < 0.0]
        assert dec.negative_weight == pytest.approx(
            float(np.abs(negatives).sum()), abs=1e-18)

    def test_pagerank_eigenvector_identity(self, rng):
        op, sub = make_case(rng, 180, 7)
        dec = reduce(op, sub, tol=1e-13)
        p = pagerank(op, tol=1e-13)
        p_r = p.p[sub.members]
        err = np.abs(dec.G_R @ p_r - p_r).sum()
        assert err < 1e-9 * np.abs(p_r).sum()

    def test_scattering_recovery(self, rng):
        op, sub = make_case(rng, 140, 6)
        p = pagerank(op, tol=1e-13)
        _, _, g_sr, g_ss = dense_blocks(op, sub)
        p_s = solve(np.eye(sub.n_s) - g_ss, g_sr @ p.p[sub.members])
        assert np.abs(p_s - p.p[sub.complement]).max() < 1e-9

    def test_left_unit_vector_identity(self, rng):
        op, sub = make_case(rng, 90, 4)
        dec = reduce(op, sub, tol=1e-13)
        assert np.abs(dec.G_R.sum(axis=0) - 1.0).max() < 1e-10

    def test_gqr_offdiag_view(self, rng):
        op, sub = make_case(rng, 60, 4)
        dec = reduce(op, sub, tol=1e-13)
        nd = dec.gqr_offdiag()
        assert np.all(np.diag(nd) == 0.0)
        off = ~np.eye(sub.n_r, dtype=bool)
        assert np.array_equal(nd[off], dec.G_qr[off])

    def test_sigma_p_diagnostic_tracks_gap(self, rng):
        op, sub = make_case(rng, 400, 4, avg_deg=6.0)
        dec = reduce(op, sub, tol=1e-13)
        sigma = float(pagerank(op, tol=1e-13).p[sub.members].sum())
        assert abs(dec.one_minus_lambda_c - sigma) / sigma < 0.5


class TestOracleReduce:
    def test_one_by_one_stochastic(self):
        op = GoogleOperator(two_cycle(), 0.85)
        gr = oracle_reduce(op, SubsetSpec(np.array([0]), 2))
        assert gr == pytest.approx(np.array([[1.0]]), abs=1e-14)

    def test_all_dangling_one_by_one(self):
        op = GoogleOperator(all_dangling(3), 0.85)
        gr = oracle_reduce(op, SubsetSpec(np.array([0]), 3))
        assert gr == pytest.approx(np.array([[1.0]]), abs=1e-14)

    def test_size_guard(self):
        g = DirectedGraph(2500, [0], [1])
        with pytest.raises(ValueError, match="2000"):
            oracle_reduce(GoogleOperator(g), SubsetSpec(np.array([0]), 2500))


class TestRegressionFixture:
    """reduce() pinned against an oracle output generated once."""

    def test_pinned_reduction(self, datadir):
        params = {}
        with open(datadir / "reduce_regression_params.txt") as fh:
            for line in fh:
                key, val = line.split("=")
                params[key.strip()] = val.strip()
        rng = np.random.default_rng(int(params["seed"]))
        g = random_graph(rng, int(params["n"]), float(params["avg_deg"]))
        members = rng.choice(g.n, size=int(params["n_r"]), replace=False)
        sub = SubsetSpec(members, g.n)
        op = GoogleOperator(g, float(params["alpha"]))
        pinned = np.loadtxt(datadir / "reduce_regression_GR.csv",
                            delimiter=",")
        dec = reduce(op, sub, tol=1e-13)
        assert np.abs(dec.G_R - pinned).max() < 1e-10
