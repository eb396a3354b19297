#include <gtest/gtest.h>

#include "generators.hpp"

using namespace spinstat;

TEST(StateFile, KetBlock) {
    StateFile f = StateFile::parse(R"(# the singlet
spin 1/2
ket
+ -  1/sqrt(2)
- +  -1/sqrt(2)   # trailing comment
)");
    ASSERT_TRUE(f.ket);
    EXPECT_EQ(*f.ket, make_state(NamedState{}));
}

TEST(StateFile, SpinOneLevels) {
    StateFile f = StateFile::parse("spin 1\nket\n1 -1 1/sqrt(2)\n-1 1 1/sqrt(2)\n");
    ASSERT_TRUE(f.ket);
    EXPECT_EQ(f.ket->dims(), (std::vector<int>{3, 3}));
    EXPECT_EQ(f.ket->amplitude({0, 2}).exact(), ExactScalar::sqrt(Rational(1, 2)));
}

TEST(StateFile, StatesAndCoefficients) {
    StateFile f = StateFile::parse(R"(
state a
+ 1
state b
- 1
coefficient [1,2] 1/sqrt(2)
coefficient [2,1] -1/sqrt(2)
)");
    ASSERT_EQ(f.states.size(), 2u);
    EXPECT_EQ(f.states[1].q_label, "b");
    EXPECT_EQ(antisymmetrize(f.spinors()), make_state(NamedState{}));
    EXPECT_EQ(classify_statistics(f.expansion()).tag, StatisticsTag::FermiDirac);
}

TEST(StateFile, ErrorsCarryLineNumbers) {
    for (const char* bad : {"ket\n+ x 1\n", "+ 1\n", "ket\n+ + sqrt(\n", "spin 1\nket\n2 0 1\n", "ket\n+ 1\n- - 1\n",
                            "ket\n+ + 1\n+ + 1\n", "coefficient [1,1] 1\n", "spin\n"}) {
        try {
            StateFile::parse(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
            EXPECT_NE(std::string(e.what()).find("line "), std::string::npos) << bad;
        }
    }
}
