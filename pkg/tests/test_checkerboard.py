import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdcheckerboard import checkerboard as cb
from hdcheckerboard.algebra import Quaternion, Q_I, Q_J, Q_K, Q_ONE, parse_quaternion
from hdcheckerboard.lattice import LatticeError, LatticePoint

from .oracles import dim2_amplitudes, dim4_amplitudes, expand_product

F1, F2, F3, F4 = cb.future_links(4)
R, L = cb.future_links(2)


def poly(**kw):
    return cb.AmplitudePoly({int(c[1:]): parse_quaternion(v) for c, v in kw.items()})


def query(dim, start, steps, end):
    d = cb.direction(dim, start)
    return cb.PathQuery(dim, d, steps, cb.parse_endpoint(dim, end))


class TestLinks:
    def test_future_links(self):
        assert [d.link for d in cb.future_links(4)] == [
            parse_quaternion(s) for s in
            ("(1+i+j+k)/2", "(1+i-j-k)/2", "(1-i+j-k)/2", "(1-i-j+k)/2")]
        assert [d.link for d in cb.future_links(2)] == [Quaternion(1, 1), Quaternion(1, -1)]
        assert all(d.link.norm_sq() == 1 for d in cb.future_links(4))

    def test_bad_dim(self):
        with pytest.raises(LatticeError):
            cb.future_links(3)

    def test_lightcone_links(self):
        links = cb.lightcone_links()
        assert len(set(links)) == 8
        assert set(links) == set(links[:4]) | {-q for q in links[:4]}

    @pytest.mark.parametrize("prev,nxt,expected", [
        (F1, F1, Q_ONE), (F1, F2, -Q_K), (F2, F1, Q_K), (F1, F3, -Q_I), (F1, F4, -Q_J),
        (R, L, -Q_I), (L, R, Q_I),
    ])
    def test_turn_factor(self, prev, nxt, expected):
        assert cb.turn_factor(prev, nxt) == expected

    def test_turn_factor_oracle(self):
        # q = next * conj(prev), computed by the 16-term expansion
        for p in cb.future_links(4):
            for n in cb.future_links(4):
                conj = (Fraction(p.link.re.to_fraction()),) + tuple(
                    -c.to_fraction() for c in p.link.components[1:])
                q = expand_product(tuple(c.to_fraction() for c in n.link.components), conj)
                assert tuple(c.to_fraction() for c in cb.turn_factor(p, n).components) == q

    def test_corner_weights(self):
        assert cb.corner_weight(F1, F2, "signed") == Q_K
        assert cb.corner_weight(F2, F1, "signed") == -Q_K
        assert cb.corner_weight(F2, F1, "axis") == -Q_K
        assert cb.corner_weight(F1, F2, "axis") == -Q_K
        assert cb.corner_weight(F1, F1) == Q_ONE
        assert cb.corner_weight(R, L) == cb.corner_weight(L, R, "axis") == -Q_I
        with pytest.raises(ValueError):
            cb.corner_weight(F1, F2, "other")

    def test_group_table_is_quaternion_group(self):
        table = cb.group_table()
        assert all(sorted(row) == list(range(8)) for row in table)
        assert cb.QUATERNION_GROUP[table[2][4]] == Q_K


class TestPropagate:
    def test_straight(self):
        assert cb.propagate(query(4, "F1", 5, "5F1")) == poly(c0="1")
        assert cb.count_paths(query(4, "F1", 5, "5F1")) == {0: 1}

    def test_two_step_4d(self):
        # two sequences reach F1+F2 from F1: (F1, F2) with one corner
        # and (F2, F1) with two (weights k then -k)
        q = query(4, "F1", 2, "F1+F2")
        assert cb.propagate(q) == poly(c1="k", c2="1")
        assert cb.count_paths(q) == {1: 1, 2: 1}

    def test_two_d_example(self):
        q = query(2, "R", 3, "2R+L")
        assert cb.propagate(q) == poly(c1="-i", c2="-2")
        assert cb.count_paths(q) == {1: 1, 2: 2}

    def test_two_d_one_step(self):
        polys = cb.propagate_all(2, R, 1)
        assert sorted(polys.values(), key=lambda p: p.degree) == [poly(c0="1"), poly(c1="-i")]

    def test_unreachable_is_zero(self):
        assert cb.propagate(query(4, "F1", 2, "3F1")).is_zero()
        assert cb.count_paths(query(4, "F1", 2, "F1-F2")) == {}
        assert cb.propagate(cb.PathQuery(4, F1, 1, LatticePoint.of(1, 0, 0, 0))).is_zero()

    def test_query_validation(self):
        with pytest.raises(LatticeError):
            cb.PathQuery(4, R, 2, LatticePoint.of(1, 1, 0, 0))
        with pytest.raises(ValueError):
            cb.PathQuery(4, F1, 0, LatticePoint.of(0, 0, 0, 0))

    @pytest.mark.parametrize("steps", range(1, 11))
    @pytest.mark.parametrize("start", [0, 1])
    def test_two_d_against_complex_oracle(self, start, steps, backend):
        ref = dim2_amplitudes(start, steps)
        got = cb.propagate_all(2, cb.future_links(2)[start], steps, backend=backend)
        assert len(got) == len(ref)
        for (t, x), coeffs in ref.items():
            p = got[LatticePoint((2 * t, 2 * x))]
            for c, z in coeffs.items():
                assert p[c] == Quaternion(int(z.real), int(z.imag))

    @pytest.mark.parametrize("convention", cb.CONVENTIONS)
    @pytest.mark.parametrize("steps", range(1, 6))
    def test_four_d_against_matrix_oracle(self, convention, steps, backend):
        links = cb.future_links(4)
        weights = []
        for p in links:
            row = []
            for n in links:
                # turn factor from expansion, then the convention applied by hand
                q = [int(2 * c) // 2 for c in expand_product(
                    tuple(c.to_fraction() for c in n.link.components),
                    tuple(c.to_fraction() * s for c, s in zip(p.link.components, (1, -1, -1, -1))))]
                if p == n:
                    row.append((1, 0, 0, 0))
                elif convention == "signed":
                    row.append(tuple(-c for c in q))
                else:
                    row.append(tuple(-abs(c) for c in q))
            weights.append(row)
        for start in range(4):
            ref = dim4_amplitudes(start, steps, weights)
            got = cb.propagate_all(4, links[start], steps, convention, backend=backend)
            assert len(got) == len(ref)
            for end, p in got.items():
                vec = cb._link_counts(4, steps, end)
                expect = {c: Quaternion(*(int(x) for x in v)) for c, v in ref[vec].items()}
                assert p == cb.AmplitudePoly(expect)

    @pytest.mark.parametrize("dim,max_t", [(2, 9), (4, 5)])
    def test_brute_force_matches(self, dim, max_t, backend):
        for start in cb.future_links(dim):
            for steps in range(1, max_t + 1):
                for conv in cb.CONVENTIONS:
                    polys, counts = cb.brute_force_all(dim, start, steps, conv)
                    assert cb.propagate_all(dim, start, steps, conv, backend) == polys
                    assert cb.count_paths_all(dim, start, steps, backend) == counts

    def test_brute_force_single_query(self):
        q = query(2, "R", 3, "2R+L")
        assert cb.brute_force(q) == cb.propagate(q)
        assert cb.brute_force(query(4, "F2", 3, "F1+F2+F3")) == cb.propagate(
            query(4, "F2", 3, "F1+F2+F3"))

    def test_conservation_and_degree(self):
        for dim, top in ((2, 12), (4, 6)):
            for steps in range(1, top + 1):
                counts = cb.count_paths_all(dim, cb.future_links(dim)[0], steps)
                assert sum(sum(n.values()) for n in counts.values()) == dim ** steps
                for p in cb.propagate_all(dim, cb.future_links(dim)[0], steps).values():
                    assert p.degree <= steps

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 7), st.integers(0, 3), st.sampled_from(cb.CONVENTIONS))
    def test_coefficient_bounded_by_count(self, steps, start, conv):
        # each path contributes a unit, so |Q_C|^2 <= N(C)^2
        polys = cb.propagate_all(4, cb.future_links(4)[start], steps, conv)
        counts = cb.count_paths_all(4, cb.future_links(4)[start], steps)
        for end, p in polys.items():
            for c, q in p.coeffs.items():
                assert q.norm_sq() <= counts[end][c] ** 2

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 14), st.integers(0, 1))
    def test_two_d_collapse(self, steps, start):
        d = cb.future_links(2)[start]
        polys = cb.propagate_all(2, d, steps)
        counts = cb.count_paths_all(2, d, steps)
        powers = [Q_ONE, -Q_I, -Q_ONE, Q_I]
        for end, p in polys.items():
            assert p == cb.AmplitudePoly({c: powers[c % 4].scale(n)
                                          for c, n in counts[end].items()})

    def test_signed_and_axis_agree_on_counts(self):
        a = cb.propagate_all(4, F1, 4, "signed")
        b = cb.propagate_all(4, F1, 4, "axis")
        assert a.keys() == b.keys() and a != b


class TestBudget:
    def test_guard(self, monkeypatch):
        monkeypatch.setenv("CHECKERBOARD_BUDGET", "100")
        with pytest.raises(cb.BudgetExceeded):
            cb.brute_force_all(4, F1, 4)
        cb.brute_force_all(4, F1, 3)

    def test_default(self, monkeypatch):
        monkeypatch.delenv("CHECKERBOARD_BUDGET", raising=False)
        assert cb.enumeration_budget() == 10 ** 7
        with pytest.raises(cb.BudgetExceeded):
            cb.brute_force_all(4, F1, 12)


class TestJson:
    def test_round_trip(self):
        p = poly(c1="k", c2="1/2-3i")
        assert p.to_json() == [{"C": 1, "coeff": {"k": "1"}},
                               {"C": 2, "coeff": {"re": "1/2^1", "i": "-3"}}]
        assert cb.AmplitudePoly.from_json(p.to_json()) == p

    def test_zero_dropped(self):
        assert cb.AmplitudePoly({0: Quaternion(), 3: Q_J}).coeffs == {3: Q_J}
        assert cb.AmplitudePoly().degree == -1


class TestNumeric:
    def test_evaluate(self):
        assert cb.evaluate(poly(c0="1"), 0.7) == (1.0, 0.0, 0.0, 0.0)
        amp = cb.evaluate(poly(c1="k"), 0.1)
        assert amp.k == pytest.approx(0.1, abs=1e-15)
        amp = cb.evaluate(poly(c1="-i", c2="-2"), 0.1)
        assert abs(amp.re + 0.02) < 1e-12 and abs(amp.i + 0.1) < 1e-12

    def test_params_mu(self):
        assert cb.EvaluationParams(2.0, 0.05, dim=2).mu == pytest.approx(0.1)
        assert cb.EvaluationParams(1.0, 0.1).mu == pytest.approx(math.sqrt(3) * 0.1)
        with pytest.raises(ValueError):
            cb.EvaluationParams(0.0, 0.1)

    def test_phase(self):
        assert cb.phase((1, 0, 0, 0)) == 0
        assert cb.phase((0, 1, 0, 0)) == pytest.approx(math.pi / 2)
        assert abs(cb.phase((-0.02, -0.1, 0, 0)) - math.acos(-0.02 / math.sqrt(0.0104))) < 1e-12
        assert cb.phase((-3, 0, 0, 0)) == pytest.approx(math.pi)
        with pytest.raises(cb.UndefinedPhaseError):
            cb.phase((0, 0, 0, 0))

    def test_step_length(self):
        assert cb.effective_step_length(2.0) == 0.5
        assert cb.effective_step_length(1.0, h=6.0, c=3.0) == 2.0
        with pytest.raises(ValueError):
            cb.effective_step_length(0)


class TestGroupStructure:
    def test_simply_transitive(self):
        table = cb.left_transition_factors()
        assert len(table) == 64
        assert all(len(v) == 1 for v in table.values())

    def test_two_link_products_are_one_coset(self):
        prods = cb.two_link_products()
        assert len(prods) == 8
        assert all(q.norm_sq() == 1 for q in prods)

    def test_closure_is_hurwitz_units(self):
        closure = cb.link_closure()
        assert len(closure) == 24 and cb.is_group(closure)
        assert set(cb.QUATERNION_GROUP) <= closure

    def test_is_group_negative(self):
        assert not cb.is_group(set(cb.lightcone_links()))
        assert cb.is_group(set(cb.QUATERNION_GROUP))


class TestParseEndpoint:
    @pytest.mark.parametrize("text,halves", [
        ("F1+F2", (2, 2, 0, 0)), ("5*F1", (5, 5, 5, 5)), ("2F1-F3", (1, 3, 1, 3)),
        ("1,1,1,1", (1, 1, 1, 1)), (" f2 ", (1, 1, -1, -1)),
    ])
    def test_four_d(self, text, halves):
        assert cb.parse_endpoint(4, text).halves == halves

    def test_two_d(self):
        assert cb.parse_endpoint(2, "2R+L").halves == (6, 2)

    @pytest.mark.parametrize("text", ["F1++F2", "F9", "1,2,3", "F1F2", "a,b,c,d"])
    def test_rejects(self, text):
        with pytest.raises(LatticeError):
            cb.parse_endpoint(4, text)
