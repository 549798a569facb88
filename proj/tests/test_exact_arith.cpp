#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfstab/field.hpp"
#include "hopfstab/intmat.hpp"
#include "hopfstab/matrix.hpp"

#include <random>

using namespace hopfstab;

TEST_CASE("scalar canonical arithmetic over Q") {
    auto F = FieldSpec::rationals();
    Scalar a = Scalar::from_mpq(F, mpq_class(2, 4));
    CHECK(a.str() == "1/2");
    CHECK((a + a).is_one());
    CHECK((a - a).is_zero());
    CHECK((a * Scalar::from_int(F, 3)).str() == "3/2");
    CHECK(a.inv().str() == "2");
    CHECK(a.conj() == a);
}

TEST_CASE("scalar arithmetic over prime fields") {
    auto F5 = FieldSpec::prime(5);
    Scalar x = Scalar::from_int(F5, 7);
    CHECK(x.str() == "2");
    CHECK((x * x).str() == "4");
    CHECK((x.inv() * x).is_one());
    CHECK(Scalar::from_int(F5, -1).str() == "4");
    CHECK(Scalar::from_mpq(F5, mpq_class(1, 2)).str() == "3");
    CHECK_THROWS_AS(FieldSpec::prime(6), std::invalid_argument);
    CHECK_THROWS_AS((void)(x + Scalar::one(FieldSpec::rationals())), FieldMismatch);
}

TEST_CASE("gaussian rationals and conjugation") {
    Scalar z = Scalar::gaussian(mpq_class(1, 2), mpq_class(3, 4));
    CHECK(z.str() == "1/2+3/4*i");
    CHECK((z * z.conj()).im() == 0);
    CHECK((z * z.inv()).is_one());
    Scalar i = Scalar::gaussian(0, 1);
    CHECK((i * i) == Scalar::from_int(FieldSpec::gaussian(), -1));
    CHECK(i.conj() == -i);
}

TEST_CASE("field spec parsing") {
    CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
    CHECK(FieldSpec::parse("F7") == FieldSpec::prime(7));
    CHECK(FieldSpec::parse("Qi") == FieldSpec::gaussian());
    CHECK_THROWS(FieldSpec::parse("R"));
}

static IntMat make(std::vector<std::vector<long>> rows) {
    IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

static void check_snf(const IntMat& M) {
    SmithForm s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    for (size_t i = 0; i < s.diagonal.size(); ++i) {
        CHECK(s.diagonal[i] >= 0);
        if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0) {
            CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
        if (s.diagonal[i] == 0 && i + 1 < s.diagonal.size()) CHECK(s.diagonal[i + 1] == 0);
    }
    // Off-diagonal of D vanishes.
    for (size_t i = 0; i < s.D.rows(); ++i)
        for (size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D.at(i, j) == 0);
}

TEST_CASE("smith normal form on pinned examples") {
    SmithForm s0 = smith_normal_form(make({{0}}));
    CHECK(s0.diagonal == std::vector<mpz_class>{0});

    SmithForm s1 = smith_normal_form(make({{2, 0}, {0, 3}}));
    CHECK(s1.diagonal == std::vector<mpz_class>({1, 6}));
    check_snf(make({{2, 0}, {0, 3}}));

    SmithForm s2 = smith_normal_form(make({{1, 0}, {0, 1}}));
    CHECK(s2.diagonal == std::vector<mpz_class>({1, 1}));

    // Doubling map on one generator.
    SmithForm s3 = smith_normal_form(make({{2}}));
    CHECK(s3.diagonal == std::vector<mpz_class>{2});

    // A classic: diag entries gcd-merge across rows.
    check_snf(make({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
    SmithForm s4 = smith_normal_form(make({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
    CHECK(s4.diagonal == std::vector<mpz_class>({2, 2, 156}));
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(0, 6), val(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        IntMat m(dim(rng), dim(rng));
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = val(rng);
        check_snf(m);
    }
}

TEST_CASE("integer solving and kernels") {
    IntMat m = make({{2, 0}, {0, 3}});
    auto x = solve_integer(m, {4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK(!solve_integer(m, {1, 0}).has_value());

    auto ker = integer_kernel_basis(make({{1, 1}}));
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] + ker[0][1] == 0);
    CHECK(abs(ker[0][0]) == 1);
}

TEST_CASE("kernel basis over fields") {
    auto F = FieldSpec::rationals();
    Mat z(2, 2, F);
    CHECK(z.kernel_basis().size() == 2);

    auto F5 = FieldSpec::prime(5);
    CHECK(Mat::identity(3, F5).kernel_basis().empty());

    Mat m(2, 2, F);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = Scalar::one(F);
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == -ker[0][1]);
    CHECK(!ker[0][0].is_zero());
}

TEST_CASE("rank nullity and solving over fields on random matrices") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 6), val(-5, 5);
    for (const char* fstr : {"Q", "F5", "Qi"}) {
        auto F = FieldSpec::parse(fstr);
        for (int trial = 0; trial < 25; ++trial) {
            Mat m(dim(rng), dim(rng), F);
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar::from_int(F, val(rng));
            auto ker = m.kernel_basis();
            CHECK(ker.size() + m.rank() == m.cols());
            for (const auto& v : ker) {
                for (const auto& c : m.apply(v)) CHECK(c.is_zero());
            }
            // Solving M x = M y recovers a valid solution.
            std::vector<Scalar> y(m.cols(), Scalar::zero(F));
            for (auto& c : y) c = Scalar::from_int(F, val(rng));
            Mat b = Mat::from_columns({m.apply(y)}, F);
            auto x = m.solve(b);
            REQUIRE(x.has_value());
            CHECK(m * *x == b);
        }
    }
}

TEST_CASE("matrix inverse and kron") {
    auto F = FieldSpec::rationals();
    Mat m(2, 2, F);
    m.at(0, 0) = Scalar::from_int(F, 2);
    m.at(0, 1) = Scalar::from_int(F, 1);
    m.at(1, 1) = Scalar::from_int(F, 3);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Mat::identity(2, F));
    Mat k = m.kron(Mat::identity(2, F));
    CHECK(k.rows() == 4);
    CHECK(k.at(1, 3) == Scalar::from_int(F, 1));
}
