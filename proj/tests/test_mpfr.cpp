#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "owent/bvn.hpp"
#include "owent/mpfr_real.hpp"
#include "owent/owen_t.hpp"
#include "owent/tetrachoric.hpp"

using owent::MpfrReal;
using owent::PrecisionScope;
using owent::SeriesVariant;

namespace {

MpfrReal pow2(long e) { return exp(MpfrReal(e) * log(MpfrReal(2))); }

}  // namespace

TEST_CASE("precision scope") {
    const auto before = MpfrReal::default_precision();
    {
        PrecisionScope scope(200);
        CHECK(MpfrReal::default_precision() == 200);
        CHECK(owent::real_traits<MpfrReal>::bits() == 200);
    }
    CHECK(MpfrReal::default_precision() == before);
}

TEST_CASE("T(h,1) closed form across precisions") {
    const std::vector<long> bits = {64, 128, 256, 512};
    const std::vector<std::size_t> yes_iterations = {25, 41, 69, 116};
    for (std::size_t k = 0; k < bits.size(); ++k) {
        MpfrReal value;
        std::size_t iterations = 0;
        {
            PrecisionScope scope(bits[k]);
            const auto h = MpfrReal::from_string("2.1");
            const auto rep = owen_t(h, MpfrReal(1), SeriesVariant::AtanExtYes);
            value = owent::std_normal_cdf(h) / MpfrReal(2) + rep.value;
            iterations = rep.iterations;
        }
        PrecisionScope wide(2 * bits[k]);
        const auto p = owent::std_normal_cdf(MpfrReal::from_string("2.1"));
        const auto exact = p * (MpfrReal(1) - p / MpfrReal(2));
        INFO("bits=" << bits[k]);
        CHECK(iterations == yes_iterations[k]);
        CHECK(abs(value - exact) < pow2(-bits[k]));
    }
}

TEST_CASE("tetrachoric and novel series agree at 128 bits") {
    PrecisionScope scope(128);
    const auto h = MpfrReal::from_string("1.3");
    const auto r = MpfrReal::from_string("0.6");
    const auto novel = owen_t(h, r, SeriesVariant::AtanExtNo).value;
    const auto yes = owen_t(h, r, SeriesVariant::AtanExtYes).value;
    const auto tet = owent::owen_t_tetrachoric(h, r, true).value;
    CHECK(abs(novel - tet) < pow2(-120));
    CHECK(abs(yes - tet) < pow2(-120));
}

TEST_CASE("phi2 at 128 bits") {
    PrecisionScope scope(128);
    const owent::Correlation<MpfrReal> c(MpfrReal::from_string("0.5"));
    const auto v = owent::phi2(MpfrReal(0), MpfrReal(0), c);
    CHECK(abs(v - MpfrReal(1) / MpfrReal(3)) < pow2(-125));
    // the reference is for the binary64 inputs, not decimal 0.3
    const owent::Correlation<MpfrReal> c2(MpfrReal(0.3));
    const auto w = owent::phi2(MpfrReal(1), MpfrReal(-0.5), c2);
    CHECK(abs(w - MpfrReal::from_string("0.28313842024448095212")) < MpfrReal::from_string("1e-19"));
}
