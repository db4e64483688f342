#include <bowl/error.hpp>
#include <bowl/profiles.hpp>

#include <gtest/gtest.h>

using bowl::Rational;
using V = std::vector<Rational>;

TEST(LoadProfile, FivePanelsExact) {
    EXPECT_EQ(bowl::load_profile(5, Rational(1), Rational(9, 10)).alphas,
              (V{1, Rational(9, 10), Rational(81, 100), Rational(9, 10), 1}));
    EXPECT_EQ(bowl::load_profile(5, Rational(9, 10), Rational(8, 10)).alphas,
              (V{Rational(9, 10), Rational(72, 100), Rational(576, 1000), Rational(72, 100), Rational(9, 10)}));
}

TEST(LoadProfile, FlatAndEven) {
    EXPECT_EQ(bowl::load_profile(7, Rational(1), Rational(1)).alphas, V(7, Rational(1)));
    EXPECT_EQ(bowl::load_profile(4, Rational(1), Rational(9, 10)).alphas,
              (V{1, Rational(9, 10), Rational(9, 10), 1}));
    EXPECT_EQ(bowl::balanced_profile(3).alphas, V(3, Rational(1)));
}

TEST(LoadProfile, RejectsOutOfRange) {
    EXPECT_THROW(bowl::load_profile(5, Rational(1), Rational(0)), bowl::InputError);
    EXPECT_THROW(bowl::load_profile(5, Rational(1), Rational(11, 10)), bowl::InputError);
    EXPECT_THROW(bowl::load_profile(5, Rational(0), Rational(1)), bowl::InputError);
    EXPECT_THROW(bowl::load_profile(0, Rational(1), Rational(1)), bowl::InputError);
}

TEST(LoadProfile, ShapeInvariants) {
    for (int n = 1; n <= 9; ++n) {
        for (const Rational beta : {Rational(1), Rational(99, 100), Rational(94, 100), Rational(1, 2)}) {
            const Rational alpha1(3, 4);
            const auto profile = bowl::load_profile(n, alpha1, beta);
            ASSERT_EQ(profile.size(), static_cast<std::size_t>(n));
            const auto &a = profile.alphas;
            for (int s = 0; s < n; ++s) EXPECT_EQ(a[s], a[n - 1 - s]);
            const int half = (n + 1) / 2;
            for (int s = 0; s + 1 < half; ++s) EXPECT_EQ(a[s + 1] / a[s], beta);
            EXPECT_EQ(*std::max_element(a.begin(), a.end()), alpha1);
            EXPECT_EQ(*std::min_element(a.begin(), a.end()), alpha1 * bowl::pow(beta, half - 1));
        }
    }
}

TEST(DeviationProfile, Examples) {
    EXPECT_EQ(bowl::deviation_profile(5, Rational(1, 10), Rational(9, 10)).cvs,
              (V{Rational(1, 10), Rational(9, 100), Rational(81, 1000), Rational(9, 100), Rational(1, 10)}));
    EXPECT_EQ(bowl::deviation_profile(3, Rational(1, 10), Rational(1)).cvs, V(3, Rational(1, 10)));
    EXPECT_EQ(bowl::deviation_profile(6, Rational(1, 10), Rational(95, 100)).cvs,
              (V{Rational(1, 10), Rational(95, 1000), Rational(9025, 100000), Rational(9025, 100000),
                 Rational(95, 1000), Rational(1, 10)}));
}

TEST(DeviationProfile, RejectsOutOfRange) {
    EXPECT_THROW(bowl::deviation_profile(5, Rational(0), Rational(1)), bowl::InputError);
    EXPECT_THROW(bowl::deviation_profile(5, Rational(1, 10), Rational(0)), bowl::InputError);
    EXPECT_THROW(bowl::deviation_profile(5, Rational(1, 10), Rational(3, 2)), bowl::InputError);
}

TEST(DeviationProfile, AsDoubles) {
    const auto d = bowl::deviation_profile(3, Rational(1, 10), Rational(1, 2)).as_doubles();
    EXPECT_EQ(d, (std::vector<double>{0.1, 0.05, 0.1}));
}
