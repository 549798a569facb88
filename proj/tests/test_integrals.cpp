#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfstab/integrals.hpp"

using namespace hopfstab;

namespace {

HopfHom identity_hom(const Hopf& a) {
    return HopfHom{a, a, Mat::identity(a.n, a.field)};
}

// theta graph: two vertices, three parallel edges
CWComplex theta_graph() {
    CWComplex k;
    k.cells[0] = {"v0", "v1"};
    k.cells[1] = {"a", "b", "c"};
    k.basepoint = "v0";
    IntMat m(2, 3);
    for (size_t j = 0; j < 3; ++j) {
        m.at(0, j) = -1;
        m.at(1, j) = 1;
    }
    k.incidence[1] = std::move(m);
    return k;
}

}  // namespace

TEST_CASE("homomorphism validation accepts identities and rejects a broken map") {
    FieldSpec f = FieldSpec::rationals();
    for (const char* spec : {"group:4", "fun:3", "group:2x2"}) {
        Hopf a = parse_hopf_spec(spec, f);
        CHECK(hopf_hom_violations(identity_hom(a)).empty());
        // the antipode is a Hopf automorphism in the bicommutative case
        CHECK(hopf_hom_violations(HopfHom{a, a, a.antipode}).empty());
    }
    Hopf a = parse_hopf_spec("group:2", f);
    Mat broken(2, 2, f);
    broken.at(0, 0) = Scalar::one(f);  // unit kept, second grouplike sent to zero
    CHECK(!hopf_hom_violations(HopfHom{a, a, broken}).empty());
}

TEST_CASE("integral along an isomorphism is its inverse") {
    FieldSpec f = FieldSpec::rationals();
    for (const char* spec : {"group:3", "group:2x2", "fun:4"}) {
        Hopf a = parse_hopf_spec(spec, f);
        CHECK(integral_along(identity_hom(a)) == Mat::identity(a.n, f));
        HopfHom s{a, a, a.antipode};
        CHECK(integral_along(s) == *a.antipode.inverse());
    }
}

TEST_CASE("integral along the trivial endomorphism evaluates the dual cointegral") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:2", f);
    // the trivial homomorphism factors through the unit: every grouplike to 1
    Mat z(2, 2, f);
    z.at(0, 0) = Scalar::one(f);
    z.at(0, 1) = Scalar::one(f);
    HopfHom triv{a, a, z};
    CHECK(hopf_hom_violations(triv).empty());
    Mat mu = integral_along(triv);
    // mu(b) = (cointegral of b) * integral: only the unit basis vector maps on,
    // and it goes to the averaged integral
    Mat want(2, 2, f);
    want.at(0, 0) = a.integral()[0];
    want.at(1, 0) = a.integral()[1];
    CHECK(mu == want);
}

TEST_CASE("integrals along group homomorphisms match the fiber-averaging oracle") {
    struct Case {
        std::vector<long> src, dst;
        std::vector<std::vector<long>> gen;
    };
    std::vector<Case> cases = {
        {{4}, {2}, {{1}}},          // surjection Z/4 -> Z/2
        {{2}, {4}, {{2}}},          // injection Z/2 -> Z/4
        {{2, 2}, {{2}}, {{1}, {1}}},// fold Z/2 x Z/2 -> Z/2
        {{6}, {3}, {{1}}},          // surjection Z/6 -> Z/3
        {{3}, {3}, {{2}}},          // automorphism of Z/3
        {{4}, {4}, {{0}}},          // trivial endomorphism
        {{2}, {2, 3}, {{1, 0}}},    // slice into a product
    };
    for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(5)})
        for (const auto& c : cases) {
            HopfHom xi = group_hom(c.src, c.dst, c.gen, f);
            CHECK(hopf_hom_violations(xi).empty());
            CHECK(integral_along(xi) == fiber_average_matrix(c.src, c.dst, c.gen, f));
        }
    CHECK_THROWS_AS(group_hom({4}, {8}, {{1}}, FieldSpec::rationals()), std::invalid_argument);
}

TEST_CASE("surjection integral averages fibers explicitly") {
    FieldSpec f = FieldSpec::rationals();
    Mat mu = integral_along(group_hom({4}, {2}, {{1}}, f));
    Scalar h = Scalar::from_int(f, 2).inv();
    Mat want(4, 2, f);
    want.at(0, 0) = h;  // fiber of 0 is {0, 2}
    want.at(2, 0) = h;
    want.at(1, 1) = h;  // fiber of 1 is {1, 3}
    want.at(3, 1) = h;
    CHECK(mu == want);
}

TEST_CASE("ground models of presets recover homology group algebras") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:2", f);
    RAction phi(a, CoeffRing::integers());
    CWComplex disk = preset_space("disk");
    GroundModel whole = ground_model(disk, all_cells(disk), 1, a, phi);
    CHECK(whole.hopf.hopf.n == 1);
    CellSet circle = {{0, "d0"}, {1, "d1"}};
    GroundModel rim = ground_model(disk, circle, 1, a, phi);
    CHECK(rim.hopf.hopf.n == 2);
    REQUIRE(rim.hopf.grouplike_group.has_value());
    CHECK(*rim.hopf.grouplike_group == AbelianGroup::from_cyclic_orders({2}));

    CWComplex theta = theta_graph();
    GroundModel tg = ground_model(theta, all_cells(theta), 1, a, phi);
    CHECK(tg.hopf.hopf.n == 4);  // H_1 = Z^2 with Z/2 coefficients
}

TEST_CASE("inclusion-induced maps are Hopf homomorphisms and kill filled cycles") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:2", f);
    RAction phi(a, CoeffRing::integers());
    CWComplex disk = preset_space("disk");
    CellSet circle = {{0, "d0"}, {1, "d1"}};
    GroundModel rim = ground_model(disk, circle, 1, a, phi);
    GroundModel whole = ground_model(disk, all_cells(disk), 1, a, phi);
    HopfHom e = induced_ground_hom(rim, whole, a, phi);
    // both grouplikes land on the unit of the one-dimensional target
    CHECK(e.matrix.rows() == 1);
    CHECK(e.matrix.cols() == 2);
    CHECK(e.matrix.at(0, 0) == Scalar::one(f));
    CHECK(e.matrix.at(0, 1) == Scalar::one(f));
}

TEST_CASE("identity-arm cospans reproduce the induced map and cylinders the identity") {
    FieldSpec f = FieldSpec::rationals();
    CWComplex disk = preset_space("disk");
    CellSet circle = {{0, "d0"}, {1, "d1"}};
    for (const char* spec : {"group:2", "group:3", "fun:2"}) {
        Hopf a = parse_hopf_spec(spec, f);
        RAction phi(a, CoeffRing::integers());
        Cospan iota = make_cospan(disk, circle, all_cells(disk), all_cells(disk), 1, a, phi);
        CHECK(path_integral(iota) == iota.e0.matrix);
        // the disk kills the rim classes: everything maps to the unit line
        CHECK(path_integral(iota).rows() == 1);

        Cospan cyl = make_cospan(disk, circle, circle, circle, 1, a, phi);
        Mat p = path_integral(cyl);
        CHECK(p == Mat::identity(p.rows(), f));
    }
}

TEST_CASE("gluing two arcs of the theta graph composes with scalar one (mono arm)") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:2", f);
    RAction phi(a, CoeffRing::integers());
    CWComplex theta = theta_graph();
    CellSet base = {{0, "v0"}};
    CellSet arc = {{0, "v0"}, {0, "v1"}, {1, "b"}};
    CellSet circle_ab = {{0, "v0"}, {0, "v1"}, {1, "a"}, {1, "b"}};
    CellSet circle_bc = {{0, "v0"}, {0, "v1"}, {1, "b"}, {1, "c"}};
    auto rep = composition_scalar(theta, base, arc, base, circle_ab, circle_bc, 1, a, phi);
    CHECK(rep.lambda.is_one());
    CHECK(rep.glued_arm_mono);
    CHECK(!rep.right_arm_epi);
}

TEST_CASE("identity right arm composes with scalar one (epi arm)") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:3", f);
    RAction phi(a, CoeffRing::integers());
    CWComplex theta = theta_graph();
    CellSet base = {{0, "v0"}};
    CellSet arc = {{0, "v0"}, {0, "v1"}, {1, "b"}};
    CellSet circle_ab = {{0, "v0"}, {0, "v1"}, {1, "a"}, {1, "b"}};
    CellSet circle_bc = {{0, "v0"}, {0, "v1"}, {1, "b"}, {1, "c"}};
    auto rep = composition_scalar(theta, base, arc, circle_bc, circle_ab, circle_bc, 1, a, phi);
    CHECK(rep.lambda.is_one());
    CHECK(rep.right_arm_epi);
}

TEST_CASE("capping a circle with a disk produces a non-unit composition scalar") {
    FieldSpec f = FieldSpec::rationals();
    CWComplex disk = preset_space("disk");
    CellSet base = {{0, "d0"}};
    CellSet circle = {{0, "d0"}, {1, "d1"}};
    for (const char* spec : {"group:2", "group:3"}) {
        Hopf a = parse_hopf_spec(spec, f);
        RAction phi(a, CoeffRing::integers());
        auto rep = composition_scalar(disk, base, circle, base, all_cells(disk), circle, 1, a, phi);
        CHECK(!rep.right_arm_epi);
        CHECK(!rep.glued_arm_mono);
        CHECK(rep.lambda == Scalar::from_int(f, static_cast<long>(a.n)).inv());
    }
}

TEST_CASE("overlapping ambients outside the middle complex are rejected") {
    FieldSpec f = FieldSpec::rationals();
    Hopf a = parse_hopf_spec("group:2", f);
    RAction phi(a, CoeffRing::integers());
    CWComplex theta = theta_graph();
    CellSet base = {{0, "v0"}};
    CellSet arc_b = {{0, "v0"}, {0, "v1"}, {1, "b"}};
    CellSet circle_ab = {{0, "v0"}, {0, "v1"}, {1, "a"}, {1, "b"}};
    // middle complex misses the shared edge b
    CellSet bad_middle = {{0, "v0"}, {0, "v1"}};
    CHECK_THROWS_AS(
        composition_scalar(theta, base, bad_middle, base, circle_ab, arc_b, 1, a, phi),
        std::invalid_argument);
}
