#include <gtest/gtest.h>

#include "chevalley/properties.hpp"

using namespace chevalley;

namespace {

// The one invariant whose literal statement is false: [x] is self-adjoint for beta^*.
bool expected_failure(const PropertyResult& r) { return r.name == "beta_star_x_anti_self_adjoint"; }

void check_module(const std::string& module) {
  PropertyOptions o;
  o.module = module;
  for (const auto& r : run_properties(o)) {
    EXPECT_EQ(r.samples, 200u);
    if (expected_failure(r)) {
      EXPECT_GT(r.failures, 0u) << r.name;
      continue;
    }
    EXPECT_TRUE(r.passes()) << r.module << "/" << r.name << ": " << r.counterexample;
    EXPECT_LT(r.abstentions, r.samples) << r.name;
  }
}

}  // namespace

TEST(Properties, Polyring) { check_module("polyring"); }
TEST(Properties, Algebra) { check_module("algebra"); }
TEST(Properties, Companion) { check_module("companion"); }
TEST(Properties, Forms) { check_module("forms"); }
TEST(Properties, Special) { check_module("special"); }
TEST(Properties, G2) { check_module("g2"); }
TEST(Properties, Lattice) { check_module("lattice"); }

TEST(Properties, DeterministicUnderSeed) {
  PropertyOptions o;
  o.module = "polyring";
  o.samples = 20;
  auto a = run_properties(o), b = run_properties(o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(property_to_json(a[i]), property_to_json(b[i]));
}

TEST(Properties, UnknownModuleRejected) {
  PropertyOptions o;
  o.module = "e8";
  EXPECT_THROW(run_properties(o), Error);
}
