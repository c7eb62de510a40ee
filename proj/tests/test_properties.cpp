#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace {

class PropertySuite : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PropertySuite, InvariantsHoldOnRandomTwoGraphs) {
  auto tally = kgtest::run_property_suite(GetParam(), 70);
  EXPECT_TRUE(tally.clean()) << tally.summary();
  EXPECT_GT(tally.equality_definite, 200u);
}

INSTANTIATE_TEST_SUITE_P(FixedSeeds, PropertySuite, ::testing::Values(7u, 1234u, 99991u));

}  // namespace
