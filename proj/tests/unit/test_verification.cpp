#include <gtest/gtest.h>

#include "nilpiece/verification.hpp"

using namespace nilpiece;

TEST(Verification, SmallChecksPass) {
  const Field f2 = Field::create(2, 1), f3 = Field::create(3, 1);
  for (const auto& c : {check_nilpotent_count(f2, 1), check_nilpotent_count(f3, 1), check_bijection(f2, 1),
                        check_bijection(f3, 1), check_prop2(f2, 1), check_oracle_equivalence(f2, 1),
                        check_grading_choice(f3, 1, 1, 2), check_equivariance(f3, 1, 1, 0), check_h_choice(f2, 1, 1, 2),
                        check_field_axioms(Field::create(2, 3))})
    EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(Verification, BijectionReport) {
  const auto r = verify_bijection(Field::create(2, 2), 1);
  EXPECT_EQ(r.filtrations, 6u);
  EXPECT_EQ(r.nilpotent_forms, 16u);
  EXPECT_TRUE(r.pass());
}

TEST(Verification, CorruptedFieldIsCaught) {
  const Field bad = Field::create(2, 2).with_corrupted_product(2, 2, 1);
  EXPECT_FALSE(check_field_axioms(bad).pass);
  const auto c = check_nilpotent_count(bad, 1);
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.detail.empty());
}

TEST(Verification, ErrorsBecomeFailures) {
  const auto c = check_bijection(Field::create(2, 1), 4);
  EXPECT_FALSE(c.pass);
  EXPECT_NE(c.detail.find("SizeError"), std::string::npos);
}
