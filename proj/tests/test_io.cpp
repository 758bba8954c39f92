#include <doctest.h>

#include <cstdio>

#include "coset/game.hpp"
#include "coset/io.hpp"
#include "coset/perms.hpp"

using namespace coset;
using io::Json;

TEST_CASE("subspace serialization round trip and schema") {
  const gf2::Subspace w = gf2::subspace_from_vectors(
      {gf2::GF2Vector::from_string("1011"), gf2::GF2Vector::from_string("0110")}, 4);
  const Json j = io::subspace_to_json(w);
  CHECK(j.at("n") == 4);
  CHECK(j.at("k") == 2);
  CHECK(j.at("basis").size() == 2);
  CHECK(j.at("basis").at(0).is_string());
  CHECK(io::subspace_from_json(j) == w);

  for (const gf2::Subspace& u : gf2::enumerate_grassmannian(4, 2)) {
    CHECK(io::subspace_from_json(io::subspace_to_json(u)) == u);
  }
}

TEST_CASE("subspace parsing errors carry a path") {
  Json j;
  j["n"] = 3;
  j["k"] = 1;
  j["basis"] = Json::array({"10"});  // wrong length
  CHECK_THROWS_AS((void)io::subspace_from_json(j), ValidationError);
  try {
    (void)io::subspace_from_json(j);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("/basis/0") != std::string::npos);
  }
}

TEST_CASE("permutation family round trip") {
  const perms::PermutationFamily fam = perms::full_family(3, 1);
  const Json j = io::family_to_json(fam);
  const perms::PermutationFamily back = io::family_from_json(j);
  CHECK(back.n == fam.n);
  CHECK(back.k == fam.k);
  REQUIRE(back.size() == fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CHECK(back.entries[i].m == fam.entries[i].m);
    CHECK(back.entries[i].perm == fam.entries[i].perm);
  }
  CHECK(perms::verify_family(back).passed);
}

TEST_CASE("matrices survive the [re,im] row-major encoding") {
  Eigen::MatrixXcd m(2, 3);
  m << std::complex<double>{1, -2}, std::complex<double>{0, 0.5}, std::complex<double>{3, 0},
      std::complex<double>{-1, 1}, std::complex<double>{2.5, -0.25}, std::complex<double>{0, -7};
  const Eigen::MatrixXcd back = io::matrix_from_json(io::matrix_to_json(m), "/m");
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS((void)io::matrix_from_json(Json::array(), "/m"), ValidationError);
  CHECK_THROWS_AS((void)io::matrix_from_json(Json::parse("[[1,2],[3,4]]"), "/m"),
                  ValidationError);
}

TEST_CASE("strategy files evaluate identically after a round trip") {
  const game::Strategy s = game::make_computational_bob_strategy(2, 1);
  const Json j = io::strategy_to_json(s);
  const game::Strategy back = io::strategy_from_json(j);
  CHECK(game::p_win(back) == doctest::Approx(game::p_win(s)).epsilon(1e-12));

  const game::Strategy r = game::make_random_pvm_strategy(2, 1, 42);
  const game::Strategy rback = io::strategy_from_json(io::strategy_to_json(r));
  CHECK(game::p_win(rback) == doctest::Approx(game::p_win(r)).epsilon(1e-12));
}

TEST_CASE("strategy parsing points at the offending field") {
  Json j = io::strategy_to_json(game::make_computational_bob_strategy(2, 1));
  SUBCASE("missing channel") {
    j.erase("channel");
    try {
      (void)io::strategy_from_json(j);
      CHECK(false);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("/channel") != std::string::npos);
    }
  }
  SUBCASE("broken kraus matrix") {
    j["channel"]["kraus"][0][0][0] = "oops";
    CHECK_THROWS_AS((void)io::strategy_from_json(j), ValidationError);
  }
  SUBCASE("missing POVM for a subspace") {
    j["bob"].erase("1");
    try {
      (void)io::strategy_from_json(j);
      CHECK(false);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("/bob") != std::string::npos);
    }
  }
  SUBCASE("non-POVM content fails validation") {
    j["charlie"]["0"][0][0][0][0] = 17.0;  // breaks completeness
    CHECK_THROWS_AS((void)io::strategy_from_json(j), ValidationError);
  }
}

TEST_CASE("operator and state dumps carry a dim header") {
  const Json op = io::operator_dump(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(op.at("dim") == 3);
  CHECK(op.at("re").size() == 9);
  CHECK(op.at("im").size() == 9);
  Eigen::VectorXcd v(2);
  v << std::complex<double>{0, 1}, std::complex<double>{1, 0};
  const Json st = io::state_dump(v);
  CHECK(st.at("dim") == 2);
  CHECK(st.at("re").at(0) == 0.0);
  CHECK(st.at("im").at(0) == 1.0);
}

TEST_CASE("file helpers report missing and malformed files") {
  CHECK_THROWS_AS((void)io::load_json_file("/nonexistent/path.json"), ValidationError);
  const std::string path = "/tmp/coset_io_test_malformed.json";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f);
    std::fputs("{not json", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS((void)io::load_json_file(path), ValidationError);
  std::remove(path.c_str());
}
