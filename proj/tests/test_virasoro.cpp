#include <catch2/catch_amalgamated.hpp>

#include <fvoa/virasoro.hpp>

using namespace fvoa;

namespace {

using QVec = FockVector<Rational>;

QVec vac(const std::string& sector) {
    return QVec::vacuum(Codeword::from_string(sector), Rational(1));
}

QVec basis_vec(MonoId id) {
    QVec v(mono(id).sector);
    v.add_term(id, Rational(1));
    return v;
}

QVec omega(int r) {
    // 1/2 sum_i a_i(-3/2) a_i(-1/2) |0>
    Codeword d = Codeword::zero(r);
    QVec out(d);
    for (int i = 1; i <= r; ++i) {
        QVec t = apply_mode(Mode{i, -24}, apply_mode(Mode{i, -8}, QVec::vacuum(d, Rational(1))));
        t.scale(Rational(1, 2));
        out += t;
    }
    return out;
}

} // namespace

TEST_CASE("frame Virasoro examples") {
    QVec a = apply_mode(Mode{1, -8}, vac("0"));
    QVec l0a = frame_virasoro_mode(1, 0, a);
    QVec expect = a;
    expect.scale(Rational(1, 2));
    CHECK(l0a == expect);

    QVec tw = vac("1");
    QVec l0tw = frame_virasoro_mode(1, 0, tw);
    QVec e2 = tw;
    e2.scale(Rational(1, 16));
    CHECK(l0tw == e2);

    Codeword d00 = Codeword::from_string("00");
    QVec b = apply_mode(Mode{1, -8}, QVec::vacuum(d00, Rational(1)));
    CHECK(frame_virasoro_mode(2, 0, b).is_zero());
}

TEST_CASE("total Virasoro examples") {
    CHECK(total_virasoro_mode(0, vac("0")).is_zero());
    CHECK(total_virasoro_mode(-1, vac("0")).is_zero()); // vacuum axiom L(-1)1 = 0

    for (int r = 1; r <= 3; ++r) {
        QVec w = omega(r);
        QVec l2w = total_virasoro_mode(2, w);
        QVec expect = QVec::vacuum(Codeword::zero(r), Rational(r, 4));
        CHECK(l2w == expect); // central term (c/2) with c = r/2
    }

    QVec tw = vac("11");
    QVec l0 = total_virasoro_mode(0, tw);
    QVec expect = tw;
    expect.scale(Rational(1, 8));
    CHECK(l0 == expect); // |d|/16 shift
}

TEST_CASE("L(0) acts as degree on homogeneous vectors") {
    for (const char* s : {"0", "1", "10", "11"}) {
        Codeword d = Codeword::from_string(s);
        for (MonoId id : enumerate_monomials_up_to(d, SixteenthInt::from_units(3))) {
            QVec v = basis_vec(id);
            QVec l0 = total_virasoro_mode(0, v);
            QVec expect = v;
            expect.scale(mono(id).degree16().to_rational());
            REQUIRE(l0 == expect);
        }
    }
}

TEST_CASE("Virasoro bracket identity, total and per frame") {
    // [L(m),L(n)] = (m-n)L(m+n) + ((m^3-m)/12)(r/2) delta_{m+n,0}, exactly,
    // on every monomial of degree <= 2 in every sector with r <= 2.
    for (int r = 1; r <= 2; ++r) {
        for (std::uint64_t bits = 0; bits < (1u << r); ++bits) {
            Codeword d(bits, r);
            auto basis = enumerate_monomials_up_to(d, SixteenthInt::from_units(2));
            for (int m = -2; m <= 2; ++m) {
                for (int n = -2; n <= 2; ++n) {
                    for (MonoId id : basis) {
                        QVec v = basis_vec(id);
                        QVec lhs = total_virasoro_mode(m, total_virasoro_mode(n, v)) -
                                   total_virasoro_mode(n, total_virasoro_mode(m, v));
                        QVec rhs = total_virasoro_mode(m + n, v);
                        rhs.scale(Rational(m - n));
                        if (m + n == 0) {
                            QVec central = v;
                            central.scale(Rational((static_cast<long long>(m) * m * m - m), 12) *
                                          Rational(r, 2));
                            rhs += central;
                        }
                        REQUIRE(lhs == rhs);

                        // per-frame with c = 1/2, and cross-frame commutation
                        for (int i = 1; i <= r; ++i) {
                            QVec fl = frame_virasoro_mode(i, m, frame_virasoro_mode(i, n, v)) -
                                      frame_virasoro_mode(i, n, frame_virasoro_mode(i, m, v));
                            QVec fr = frame_virasoro_mode(i, m + n, v);
                            fr.scale(Rational(m - n));
                            if (m + n == 0) {
                                QVec central = v;
                                central.scale(Rational(static_cast<long long>(m) * m * m - m, 24));
                                fr += central;
                            }
                            REQUIRE(fl == fr);
                            for (int j = 1; j <= r; ++j) {
                                if (i == j) continue;
                                QVec cross = frame_virasoro_mode(i, m, frame_virasoro_mode(j, n, v)) -
                                             frame_virasoro_mode(j, n, frame_virasoro_mode(i, m, v));
                                REQUIRE(cross.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("Virasoro adjointness (L(n)u, v) = (u, L(-n)v)") {
    for (const char* s : {"0", "1", "11"}) {
        Codeword d = Codeword::from_string(s);
        auto basis = enumerate_monomials_up_to(d, SixteenthInt::from_units(2));
        for (int n = -2; n <= 2; ++n) {
            for (MonoId iu : basis)
                for (MonoId iv : basis) {
                    QVec u = basis_vec(iu), v = basis_vec(iv);
                    REQUIRE(bilinear_form(total_virasoro_mode(n, u), v) ==
                            bilinear_form(u, total_virasoro_mode(-n, v)));
                }
        }
    }
}

TEST_CASE("divided powers") {
    // L(1)^2/2! on a(-5/2)|0> = 1 * a(-1/2)|0>  (paper coefficient (-2)(-1)/2)
    QVec v = apply_mode(Mode{1, -40}, vac("0"));
    QVec res = divided_power(1, 2, v);
    QVec expect = apply_mode(Mode{1, -8}, vac("0"));
    CHECK(res == expect);

    CHECK(divided_power(1, 1, vac("0")).is_zero());
    CHECK(divided_power(1, 3, vac("0")).is_zero());
    CHECK(divided_power(-1, 1, vac("0")).is_zero());

    // explicit coefficient on single-mode vectors, n <= 6
    for (int s2 = 1; s2 <= 13; s2 += 2) { // s = s2/2 half-odd
        for (int n = 1; n <= 6; ++n) {
            QVec u = apply_mode(Mode{1, -8 * s2}, vac("0"));
            QVec lhs = divided_power(1, n, u);
            // (-1)^n (-s+1/2)(-s+3/2)...(-s+n-1/2) / n! * a(-s+n)
            Rational coeff(1);
            for (int j = 0; j < n; ++j) coeff *= Rational(-s2 + 1 + 2 * j, 2);
            if (n % 2) coeff = -coeff;
            for (int j = 1; j <= n; ++j) coeff /= j;
            QVec rhs(Codeword::from_string("0"));
            if (-8 * s2 + 16 * n < 0) {
                rhs = apply_mode(Mode{1, -8 * s2 + 16 * n}, vac("0"));
                rhs.scale(coeff);
            } else if (-8 * s2 + 16 * n > 0) {
                // annihilator on the vacuum: zero
            }
            REQUIRE(lhs == rhs);
        }
    }

    // dyadic closure of divided powers on lattice bases, r <= 2, n <= 6
    for (const char* s : {"0", "1", "11"}) {
        Codeword d = Codeword::from_string(s);
        for (MonoId id : enumerate_monomials_up_to(d, SixteenthInt::from_units(2))) {
            for (int n = 0; n <= 6; ++n) {
                for (int which : {1, -1}) {
                    QVec r = divided_power(which, n, basis_vec(id));
                    for (const auto& [mid, c] : r.terms()) REQUIRE(rational_is_dyadic(c));
                }
            }
        }
    }
}

TEST_CASE("ising graded dims") {
    auto h0 = ising_graded_dims(0, 4);
    CHECK(h0 == std::vector<std::int64_t>{1, 0, 1, 1, 2});
    auto h8 = ising_graded_dims(8, 4);
    CHECK(h8 == std::vector<std::int64_t>{1, 1, 1, 1, 2});
    auto h1 = ising_graded_dims(1, 3);
    CHECK(h1 == std::vector<std::int64_t>{1, 1, 1, 2});
}

TEST_CASE("highest weight decomposition: r=1") {
    Codeword d0 = Codeword::from_string("0");
    auto reps = highest_weight_decomposition(d0, SixteenthInt::from_units(3));
    // patterns (0) at degree 0 and (1/2) at degree 1/2, multiplicity 1, nothing else
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].degree16 == SixteenthInt(0));
    CHECK(reps[0].pattern16 == std::vector<int>{0});
    CHECK(reps[0].multiplicity == 1);
    CHECK(reps[1].degree16 == SixteenthInt(8));
    CHECK(reps[1].pattern16 == std::vector<int>{8});
    CHECK(reps[1].multiplicity == 1);

    Codeword d1 = Codeword::from_string("1");
    auto reps1 = highest_weight_decomposition(d1, SixteenthInt::from_units(2));
    REQUIRE(reps1.size() == 1);
    CHECK(reps1[0].degree16 == SixteenthInt(1));
    CHECK(reps1[0].multiplicity == 2); // 2^{|d|}
}

TEST_CASE("highest weight decomposition: multiplicity law 2^{|d|}") {
    for (int r = 1; r <= 2; ++r) {
        for (std::uint64_t bits = 0; bits < (1u << r); ++bits) {
            Codeword d(bits, r);
            auto reps = highest_weight_decomposition(d, SixteenthInt::from_units(2));
            std::int64_t expected = 1ll << d.weight();
            for (const auto& rep : reps) {
                // at each pattern's lowest degree (= sum of pattern entries)
                std::int64_t lowest = 0;
                for (int h : rep.pattern16) lowest += h;
                if (rep.degree16.value16 == lowest) CHECK(rep.multiplicity == expected);
            }
        }
    }
}

TEST_CASE("pattern multiplicities times ising dims reproduce graded dimensions") {
    for (const char* s : {"1", "10", "11"}) {
        Codeword d = Codeword::from_string(s);
        auto reps = highest_weight_decomposition(d, SixteenthInt::from_units(4));
        // V(H,d) = sum over patterns of 2^{|d|} L(h): check dims to degree 4
        for (std::int64_t deg16 = d.weight(); deg16 <= 64; deg16 += 1) {
            std::int64_t total = 0;
            for (const auto& rep : reps) {
                std::int64_t base = rep.degree16.value16;
                std::int64_t offset = deg16 - base;
                if (offset < 0) continue;
                // product of per-fermion ising characters at combined offset
                // offset must distribute over fermions in integer units
                if (offset % 16 != 0) continue;
                int units = static_cast<int>(offset / 16);
                // convolve characters of the pattern
                std::vector<std::int64_t> conv{1};
                for (int h : rep.pattern16) {
                    auto chi = ising_graded_dims(h, units);
                    std::vector<std::int64_t> next(units + 1, 0);
                    for (size_t a = 0; a < conv.size(); ++a)
                        for (int b = 0; a + b <= static_cast<size_t>(units); ++b)
                            next[a + b] += conv[a] * chi[b];
                    conv = std::move(next);
                }
                total += rep.multiplicity * conv[units];
            }
            REQUIRE(total == graded_dimension(d, ParityFilter::both, SixteenthInt(deg16)));
        }
    }
}
