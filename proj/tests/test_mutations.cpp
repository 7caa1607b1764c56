#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holotel/acceptance.hpp"

using namespace holotel;

namespace {

bool passes(const AcceptanceContext& context, const std::string& id) {
  const auto results = run_acceptance(context, {id});
  REQUIRE(results.size() == 1);
  return results.front().passed;
}

}  // namespace

TEST_CASE("unmutated circuit passes the gate criteria") {
  const AcceptanceContext context;
  CHECK(passes(context, "1"));
  CHECK(passes(context, "2"));
  CHECK(passes(context, "3"));
}

TEST_CASE("moving the final Hadamard off Bob's qubit breaks exactness") {
  AcceptanceContext context;
  context.options.circuit.wiring[3] = {2};
  CHECK_FALSE(passes(context, "1"));
}

TEST_CASE("swapping a CNOT's control and target breaks exactness") {
  AcceptanceContext context;
  context.options.circuit.wiring[4] = {3, 1};
  CHECK_FALSE(passes(context, "1"));
}

TEST_CASE("flipping the Hadamard deviation sign breaks the eps coefficient") {
  AcceptanceContext context;
  context.options.circuit.hadamard_deviation = -hadamard_deviation();
  CHECK(passes(context, "1"));
  CHECK_FALSE(passes(context, "2"));
}

TEST_CASE("a CNOT deviation conditioned on the target breaks the delta coefficient") {
  AcceptanceContext context;
  ComplexMatrix wrong = ComplexMatrix::Zero(4, 4);
  wrong(1, 1) = wrong(3, 3) = Complex(0, -1);
  context.options.circuit.cnot_deviation = wrong;
  CHECK_FALSE(passes(context, "3"));
}

TEST_CASE("the deviation sign alone is invisible to the fidelity") {
  // F depends on the deviation only through |amplitudes|, which complex
  // conjugation symmetry leaves unchanged for -i -> +i.
  AcceptanceContext context;
  context.options.circuit.cnot_deviation = -cnot_deviation();
  CHECK(passes(context, "3"));
}

TEST_CASE("unknown criterion ids are rejected") {
  CHECK_THROWS_AS(run_acceptance(AcceptanceContext{}, {"15"}), std::invalid_argument);
}
