#include "unital/json_io.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "unital/errors.hpp"

using namespace unital;
using json_io::Json;

TEST(json_matrix, encoding_shape) {
  const auto m = ComplexMatrix::from_rows({{Complex{1.0, 2.0}, 0.0}, {0.5, Complex{0.0, -1.0}}});
  const Json j = json_io::to_json(m);
  EXPECT_EQ(j.dump(), R"({"rows":2,"cols":2,"data":[[1.0,2.0],[0.0,0.0],[0.5,0.0],[0.0,-1.0]]})");
}

TEST(json_matrix, text_round_trip_is_bit_exact) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int trial = 0; trial < 200; ++trial) {
    ComplexMatrix m = unital::testing::random_matrix(1 + trial % 5, 1 + trial % 3, rng);
    // Mix in arbitrary finite bit patterns, subnormals included.
    for (auto& z : m.entries()) {
      double re = std::bit_cast<double>(bits(rng));
      if (!std::isfinite(re)) re = z.real();
      z = Complex{re, z.imag() * 1e-300};
    }
    const auto text = json_io::to_json(m).dump();
    const auto back = json_io::matrix_from_json(Json::parse(text));
    ASSERT_EQ(back.rows(), m.rows());
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.entries()[i].real()),
                std::bit_cast<std::uint64_t>(m.entries()[i].real()));
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.entries()[i].imag()),
                std::bit_cast<std::uint64_t>(m.entries()[i].imag()));
    }
  }
}

TEST(json_matrix, strict_schema) {
  EXPECT_THROW(json_io::matrix_from_json(Json::parse(R"({"rows":2,"cols":1,"data":[[1,0]]})")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(Json::parse(R"({"rows":0,"cols":1,"data":[]})")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"data":[["a",0]]})")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(Json::parse(R"({"cols":1,"data":[[1,0]]})")), ParseError);
  EXPECT_THROW(json_io::matrix_from_json(Json::parse("[1,2]")), ParseError);
}

TEST(json_density, ket_or_matrix) {
  const auto rho = json_io::density_from_json(Json::parse(R"({"rows":2,"cols":1,"data":[[0,0],[1,0]]})"));
  EXPECT_EQ(rho.matrix()(1, 1), Complex{1.0});
  EXPECT_THROW(json_io::density_from_json(Json::parse(R"({"rows":2,"cols":1,"data":[[1,0],[1,0]]})")),
               InvalidState);
}

TEST(json_kraus, array_or_document) {
  const Json id = json_io::to_json(ComplexMatrix::identity(2));
  const auto a = json_io::kraus_from_json(Json::array({id}));
  EXPECT_EQ(a.size(), 1u);
  Json doc;
  doc["operators"] = Json::array({id, id});
  EXPECT_EQ(json_io::kraus_from_json(doc).size(), 2u);
  EXPECT_THROW(json_io::kraus_from_json(Json::array()), ParseError);
  EXPECT_THROW(json_io::kraus_from_json(Json::object()), ParseError);
}

TEST(json_file, missing_file) { EXPECT_THROW(json_io::read_file("/nonexistent/x.json"), ParseError); }
