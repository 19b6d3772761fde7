#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "wickfock/model.hpp"

using namespace wickfock;

namespace {

double diff(const Matrix& a, const Matrix& b) { return oracle::norm2(a - b); }

std::string load_error(const std::string& text) {
  try {
    load_spec(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("q-ccr preset is the scaled flip") {
  const auto spec = preset_q_ccr(2, 0.5);
  const auto& m = spec.coefficient_matrix();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          const double expect = (i == l && j == k) ? 0.5 : 0.0;
          CHECK(m(i * 2 + j, k * 2 + l) == Complex(expect));
        }
  CHECK(diff(build_T(spec).matrix(), oracle::T_matrix(oracle::q_ccr(2, 0.5))) == 0.0);
  CHECK(diff(build_T(preset_q_ccr(2, 1.0)).matrix(), oracle::T_matrix(oracle::q_ccr(2, 1.0))) == 0.0);
}

TEST_CASE("q-ccr coefficients match the relation a_i* a_j = delta + q a_j a_i*") {
  const auto spec = preset_q_ccr(3, 0.25);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          // a_i* a_j = delta_ij + q a_j a_i*  means T_ij^kl = q [k = i][l = j].
          const double expect = (k == i && l == j) ? 0.25 : 0.0;
          CHECK(spec.coeff(i, j, k, l) == Complex(expect));
        }
}

TEST_CASE("qij-ccr and example3 presets agree with the monomial oracle") {
  const auto qij = preset_qij_ccr({0.5, 0.3}, {{1, -1}, {-1, 1}});
  CHECK(diff(build_T(qij).matrix(), oracle::T_matrix(oracle::qij_ccr({0.5, 0.3}, {{1, -1}, {-1, 1}}))) == 0.0);
  const auto ex3 = preset_example3(3, -0.4);
  CHECK(diff(build_T(ex3).matrix(), oracle::T_matrix(oracle::example3(3, -0.4))) == 0.0);
  CHECK(build_T(preset_example3(2, 0.5)).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(build_T(preset_q_ccr(2, 0.5)).norm() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("preset parameter validation") {
  CHECK_THROWS_AS(preset_q_ccr(2, 1.5), InputError);
  CHECK_THROWS_AS(preset_example3(2, 1.0), InputError);
  CHECK_THROWS_AS(preset_qij_ccr({0.5, 0.5}, {{1, 1}, {-1, 1}}), InputError);
  CHECK_THROWS_AS(preset_qij_ccr({0.5, 0.5}, {{1, 2}, {2, 1}}), InputError);
  CHECK_THROWS_AS(preset_qij_ccr({1.5, 0.5}, {{1, 1}, {1, 1}}), InputError);
  CHECK_THROWS_AS(preset_q_ccr(0, 0.5), InputError);
  CHECK_THROWS_AS(load_spec(R"({"d":2,"preset":{"name":"nope","q":0.5}})"), InputError);
}

TEST_CASE("spec documents in all three forms") {
  const auto a = load_spec(R"({"d":2,"preset":{"name":"q-ccr","q":0.5}})");
  CHECK(a.source()["name"] == "q-ccr");

  const auto b = load_spec(R"({"d":2,"coefficients":[
      {"i":1,"j":2,"k":1,"l":2,"re":0.5,"im":0},
      {"i":2,"j":1,"k":2,"l":1,"re":0.5,"im":0},
      {"i":1,"j":1,"k":1,"l":1,"re":0.5},
      {"i":2,"j":2,"k":2,"l":2,"re":0.5}]})");
  CHECK(diff(a.coefficient_matrix(), b.coefficient_matrix()) == 0.0);

  const auto flat = load_spec(R"({"d":1,"matrix":[{"re":0.5,"im":0}]})");
  CHECK(flat.coeff(0, 0, 0, 0) == Complex(0.5));

  std::string nested = R"({"d":2,"matrix":[)";
  for (int r = 0; r < 4; ++r) {
    nested += r ? ",[" : "[";
    for (int c = 0; c < 4; ++c) {
      const bool on = (r == 0 && c == 0) || (r == 1 && c == 2) || (r == 2 && c == 1) || (r == 3 && c == 3);
      nested += std::string(c ? "," : "") + "{\"re\":" + (on ? "0.5" : "0") + ",\"im\":0}";
    }
    nested += "]";
  }
  nested += "]}";
  CHECK(diff(load_spec(nested).coefficient_matrix(), a.coefficient_matrix()) == 0.0);
}

TEST_CASE("serialize round-trips through the coefficient form") {
  const auto spec = preset_qij_ccr({0.5, 0.25, 0.75}, {{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}});
  const auto again = load_spec_json(nlohmann::json::parse(serialize(spec).dump()));
  CHECK(diff(spec.coefficient_matrix(), again.coefficient_matrix()) == 0.0);
}

TEST_CASE("complex coefficients with hermitian partners load") {
  const auto spec = load_spec(R"({"d":2,"coefficients":[
      {"i":1,"j":2,"k":2,"l":1,"re":0.1,"im":0.2},
      {"i":2,"j":1,"k":1,"l":2,"re":0.1,"im":-0.2}]})");
  CHECK(spec.coeff(0, 1, 1, 0) == Complex(0.1, 0.2));
  CHECK(build_T(spec).adjoint().matrix().isApprox(build_T(spec).matrix()));
}

TEST_CASE("malformed and inconsistent specs are rejected") {
  CHECK(load_error(R"({"d":2,"coefficients":[{"i":1,"j":2,"k":1,"l":1,"re":0.3}]})").find("partner") !=
        std::string::npos);
  CHECK(load_error(R"({"d":2,"coefficients":[
      {"i":1,"j":2,"k":1,"l":1,"re":0.3},
      {"i":2,"j":1,"k":1,"l":1,"re":0.2}]})")
            .find("(1,2,1,1)") != std::string::npos);
  CHECK(load_error(R"({"d":2,"coefficients":[
      {"i":1,"j":1,"k":1,"l":1,"re":0.3},
      {"i":1,"j":1,"k":1,"l":1,"re":0.3}]})")
            .find("duplicate") != std::string::npos);
  CHECK(load_error(R"({"d":2,"coefficients":[{"i":3,"j":1,"k":1,"l":1,"re":0.3}]})").find("out of range") !=
        std::string::npos);
  CHECK_FALSE(load_error(R"({"d":1,"coefficients":[{"i":1,"j":1,"k":1,"l":1,"re":0.3,"im":0.1}]})").empty());
  CHECK_FALSE(load_error(R"({"d":2,"matrix":[{"re":1}]})").empty());
  CHECK_FALSE(load_error(R"({"d":2})").empty());
  CHECK_FALSE(load_error(R"({"d":2,"preset":{"name":"q-ccr","q":0.5},"coefficients":[]})").empty());
  CHECK_FALSE(load_error(R"({"preset":{"name":"q-ccr","q":0.5}})").empty());
  CHECK_FALSE(load_error(R"({"d":0,"coefficients":[]})").empty());
  CHECK_FALSE(load_error("{not json").empty());
  CHECK_FALSE(load_error("[1,2]").empty());
  CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), InputError);
}

TEST_CASE("hermiticity tolerance is 1e-12") {
  auto text = [](const std::string& im) {
    return R"({"d":1,"coefficients":[{"i":1,"j":1,"k":1,"l":1,"re":0.5,"im":)" + im + "}]}";
  };
  CHECK(load_error(text("4e-13")).empty());
  CHECK_FALSE(load_error(text("1e-12")).empty());
}

TEST_CASE("TensorOperator arithmetic and shape checks") {
  const auto id = TensorOperator::identity(2, 2);
  const auto z = TensorOperator::zero(2, 2);
  CHECK(distance(id + z, id) == 0.0);
  CHECK(distance(id * id, id) == 0.0);
  CHECK(distance(Complex(2.0) * id - id, id) == 0.0);
  CHECK(id.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(id + TensorOperator::identity(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(id * TensorOperator::identity(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(TensorOperator(2, 2, Matrix::Zero(3, 3)), std::invalid_argument);
  CHECK(TensorOperator::identity(3, 0).size() == 1);
}
