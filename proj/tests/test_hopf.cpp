#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfstab/hopf.hpp"

using namespace hopfstab;

static std::vector<Scalar> basis(const Hopf& a, size_t i) {
    std::vector<Scalar> v(a.n, Scalar::zero(a.field));
    v[i] = Scalar::one(a.field);
    return v;
}

TEST_CASE("constructors satisfy all axioms over several fields") {
    for (const char* f : {"Q", "F5", "Qi"}) {
        auto F = FieldSpec::parse(f);
        for (std::vector<long> g : {std::vector<long>{2}, {3}, {4}, {2, 2}}) {
            CAPTURE(f);
            auto kg = make_group_hopf(g, F);
            CHECK(check_axioms(kg).empty());
            auto fg = make_function_hopf(g, F);
            CHECK(check_axioms(fg).empty());
            CHECK(check_axioms(dual(kg)).empty());
            CHECK(check_axioms(tensor_hopf(kg, fg)).empty());
        }
    }
}

TEST_CASE("group Hopf algebra closed-form integrals") {
    auto a = make_group_hopf({2}, FieldSpec::rationals());
    auto half = Scalar::from_mpq(a.field, mpq_class(1, 2));
    CHECK(a.integral() == std::vector<Scalar>({half, half}));
    // cointegral is the indicator of the identity element
    CHECK(a.cointegral() == std::vector<Scalar>({a.sc(1), a.sc(0)}));
    CHECK(a.inverse_volume() == half);
    CHECK(inverse_volume(a) == half);

    auto z4 = make_group_hopf({4}, FieldSpec::rationals());
    for (size_t i = 0; i < 4; ++i) CHECK(z4.integral()[i] == Scalar::from_mpq(z4.field, mpq_class(1, 4)));
}

TEST_CASE("function Hopf algebra structure") {
    auto a = make_function_hopf({2}, FieldSpec::rationals());
    // pointwise products of indicators
    CHECK(a.mul_vec(basis(a, 0), basis(a, 0)) == basis(a, 0));
    for (const auto& c : a.mul_vec(basis(a, 0), basis(a, 1))) CHECK(c.is_zero());
    // integral = indicator of identity; cointegral = averaging
    CHECK(a.integral() == std::vector<Scalar>({a.sc(1), a.sc(0)}));
    auto half = Scalar::from_mpq(a.field, mpq_class(1, 2));
    CHECK(a.cointegral() == std::vector<Scalar>({half, half}));
    CHECK(a.eval_functional(a.cointegral(), a.unit_v).is_one());
    CHECK(a.inverse_volume() == half);
}

TEST_CASE("duality relations") {
    auto kg = make_group_hopf({3}, FieldSpec::rationals());
    auto d = dual(kg);
    auto fg = make_function_hopf({3}, FieldSpec::rationals());
    CHECK(d.mult_t == fg.mult_t);
    CHECK(d.comult_t == fg.comult_t);
    CHECK(d.unit_v == fg.unit_v);
    auto dd = dual(d);
    CHECK(dd.mult_t == kg.mult_t);
    CHECK(dd.comult_t == kg.comult_t);
    // integral of the dual is the cointegral of the original
    CHECK(d.integral() == kg.cointegral());
    CHECK(d.cointegral() == kg.integral());
}

TEST_CASE("bisemisimplicity certificate rejects modular group algebras") {
    CHECK_THROWS_AS(make_group_hopf({2}, FieldSpec::prime(2)), NotBisemisimple);
    CHECK_THROWS_AS(make_group_hopf({6}, FieldSpec::prime(3)), NotBisemisimple);
    CHECK_NOTHROW(make_group_hopf({3}, FieldSpec::prime(2)));
}

TEST_CASE("inverse volume multiplicativity") {
    auto a = make_group_hopf({2}, FieldSpec::rationals());
    auto b = make_function_hopf({3}, FieldSpec::rationals());
    auto t = tensor_hopf(a, b);
    CHECK(t.inverse_volume() == a.inverse_volume() * b.inverse_volume());
    CHECK(inverse_volume(t) == t.inverse_volume());
}

TEST_CASE("Frobenius form closed values and properties") {
    auto kg = make_group_hopf({4}, FieldSpec::rationals());
    Mat g = kg.frobenius_gram();
    // e(g_i, g_j) = |G| when g_i g_j = e, else 0
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            CHECK(g.at(i, j) == ((i + j) % 4 == 0 ? kg.sc(4) : kg.sc(0)));

    auto fg = make_function_hopf({4}, FieldSpec::rationals());
    Mat gf = fg.frobenius_gram();
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) CHECK(gf.at(i, j) == (i == j ? fg.sc(1) : fg.sc(0)));

    for (const Hopf& a : {kg, fg, tensor_hopf(kg, fg)}) {
        Mat gr = a.frobenius_gram();
        CHECK(gr == gr.transpose());
        CHECK(gr.rank() == a.n);
        // associativity e(ab, c) = e(a, bc) on the basis
        for (size_t i = 0; i < a.n; ++i)
            for (size_t j = 0; j < a.n; ++j)
                for (size_t k = 0; k < a.n; ++k)
                    CHECK(a.frobenius_form(a.mul_vec(basis(a, i), basis(a, j)), basis(a, k)) ==
                          a.frobenius_form(basis(a, i), a.mul_vec(basis(a, j), basis(a, k))));
        // e(unit, unit) = 1/invvol
        CHECK(a.frobenius_form(a.unit_v, a.unit_v) == a.inverse_volume().inv());
    }
}

TEST_CASE("copairing satisfies the snake identity") {
    for (const char* spec : {"group:2", "group:4", "fun:3", "tensor:group:2,fun:2"}) {
        auto a = parse_hopf_spec(spec, FieldSpec::rationals());
        // i_A(1) = (S (x) id) Delta(integral)
        Mat co = a.comult_mat(a.integral());
        Mat pairing(a.n, a.n, a.field);  // pairing[u][v] coefficient of u (x) v
        for (size_t j = 0; j < a.n; ++j)
            for (size_t k = 0; k < a.n; ++k) {
                if (co.at(j, k).is_zero()) continue;
                for (size_t u = 0; u < a.n; ++u)
                    if (!a.antipode.at(u, j).is_zero())
                        pairing.at(u, k) += a.antipode.at(u, j) * co.at(j, k);
            }
        // snake: sum_t e(x, u_t) v_t = x for basis x
        Mat gram = a.frobenius_gram();
        CHECK(gram * pairing == Mat::identity(a.n, a.field));
    }
}

TEST_CASE("canonical ring action") {
    auto z3 = make_group_hopf({3}, FieldSpec::rationals());
    RAction phi(z3, CoeffRing::integers());
    // phi(0) = unit . counit : every group element to e
    Mat p0 = phi(0);
    for (size_t j = 0; j < 3; ++j) {
        CHECK(p0.at(0, j).is_one());
        CHECK(p0.at(1, j).is_zero());
    }
    CHECK(phi(1) == Mat::identity(3, z3.field));
    CHECK(phi(-1) == z3.antipode);

    auto z4 = make_group_hopf({4}, FieldSpec::rationals());
    RAction phi4(z4, CoeffRing::integers());
    Mat p2 = phi4(2);  // g -> g^2
    for (size_t j = 0; j < 4; ++j) CHECK(p2.at((2 * j) % 4, j).is_one());

    // convolution-additivity, composition-multiplicativity, commutation
    for (long r : {-2L, 0L, 1L, 3L})
        for (long s : {-1L, 2L, 4L}) {
            CHECK(z4.convolve(phi4(r), phi4(s)) == phi4(r + s));
            CHECK(phi4(r) * phi4(s) == phi4(r * s));
            CHECK(phi4(r) * phi4(s) == phi4(s) * phi4(r));
        }
    // each phi(r) is a Hopf endomorphism: check it preserves products on basis
    for (long r : {-1L, 2L, 3L}) {
        Mat m = phi4(r);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j)
                CHECK(z4.mul_vec(m.column(i), m.column(j)) ==
                      m.apply(z4.mul_vec(basis(z4, i), basis(z4, j))));
    }

    // Z/m actions: defined iff the exponent divides m
    CHECK_NOTHROW(RAction(z4, CoeffRing::integers_mod(4)));
    CHECK_NOTHROW(RAction(z4, CoeffRing::integers_mod(8)));
    CHECK_THROWS(RAction(z4, CoeffRing::integers_mod(2)));
    RAction phim(z4, CoeffRing::integers_mod(4));
    CHECK(phim(6) == phi4(2));
    CHECK(phim(-1) == phi4(3));
}

TEST_CASE("complexification and hermitian forms") {
    auto z3 = make_group_hopf({3}, FieldSpec::rationals());
    for (StarChoice ch : {StarChoice::Identity, StarChoice::Antipode}) {
        auto c = complexify(z3, ch);
        CHECK(check_axioms(c.cx).empty());
        // star is an antilinear involution
        auto i = Scalar::gaussian(0, 1);
        auto v = basis(c.cx, 1);
        for (auto& x : v) x *= i;
        auto sv = c.star(c.star(v));
        CHECK(sv == v);
        // conjugate symmetry e*(v,w) = conj(e*(w,v))
        auto w = basis(c.cx, 2);
        CHECK(c.hermitian_form(v, w) == c.hermitian_form(w, v).conj());
    }
    // tau = id on a group algebra: e*(g,g) = |G| e^(g^2) = 0 unless g^2 = e
    auto cid = complexify(z3, StarChoice::Identity);
    CHECK(cid.hermitian_form(basis(cid.cx, 1), basis(cid.cx, 1)).is_zero());
    // tau = antipode: e*(g,g) = |G| > 0, positive definite on the group basis
    auto cs = complexify(z3, StarChoice::Antipode);
    CHECK(cs.hermitian_form(basis(cs.cx, 1), basis(cs.cx, 1)) == cs.cx.sc(3));
    // function algebra with tau = id is positive definite on indicators
    auto f3 = complexify(make_function_hopf({3}, FieldSpec::rationals()), StarChoice::Identity);
    for (size_t i = 0; i < 3; ++i) CHECK(f3.hermitian_form(basis(f3.cx, i), basis(f3.cx, i)).is_one());
    // e*(unit, unit) = e(unit, unit)
    CHECK(cid.hermitian_form(cid.cx.unit_v, cid.cx.unit_v) ==
          cid.cx.frobenius_form(cid.cx.unit_v, cid.cx.unit_v));
}

TEST_CASE("tampered structure constants are detected") {
    auto a = make_group_hopf({4}, FieldSpec::rationals());
    a.comult(2, 2, 3) += Scalar::one(a.field);
    auto bad = check_axioms(a);
    CHECK(!bad.empty());
}

TEST_CASE("spec string parsing") {
    auto t = parse_hopf_spec("group:2x4", FieldSpec::rationals());
    CHECK(t.n == 8);
    CHECK(t.group_factors == std::vector<long>({2, 4}));
    CHECK(parse_hopf_spec("fun:3", FieldSpec::rationals()).function_factors == std::vector<long>{3});
    CHECK(parse_hopf_spec("dual:group:3", FieldSpec::prime(5)).function_factors ==
          std::vector<long>{3});
    auto tt = parse_hopf_spec("tensor:group:2,fun:2", FieldSpec::rationals());
    CHECK(tt.n == 4);
    auto nested = parse_hopf_spec("tensor:tensor:group:2,group:2,fun:2", FieldSpec::rationals());
    CHECK(nested.n == 8);
    auto cx = parse_hopf_spec("cx:group:2:tau=antipode", FieldSpec::gaussian());
    CHECK(cx.n == 2);
    CHECK(cx.field == FieldSpec::gaussian());
    CHECK_THROWS(parse_hopf_spec("cx:group:2:tau=id", FieldSpec::rationals()));
    CHECK_THROWS(parse_hopf_spec("ring:2", FieldSpec::rationals()));
}
