#pragma once
#include "atlas/germ_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace atlas {

// 4t(t-3)/(1-t)^2 * log q with t = 1/p.
LogQVal phi1_zero_constant(long p);

// 2 omega dOrb_1 + l-Int * log q; 0 on side 0. Near x0 != 0 the value is
// defined up to the constant 2 omega C(x0).
LogQVal phi1(const BPoint& x, const std::optional<BPoint>& x0 = std::nullopt);

struct VerifySample {
    BPoint x;
    MLParams ml;
    std::string l_case;
    LogQVal phi1;
};

struct VerifyReport {
    long p = 3;
    BPoint base;
    std::string case_tag;
    std::vector<VerifySample> samples;
    bool constant = false;
    std::optional<LogQVal> value;  // common value; modulo 2 omega C(x0) off zero
    std::optional<LogQVal> expected;
    std::vector<std::string> notes;
    std::string failure;
    bool passed() const { return constant && failure.empty(); }
};

struct ZeroGrid {
    long m_max = 6;
    long l_max = 15;
    long lplus_max = 15;
};

VerifyReport verify_zero(long p, const ZeroGrid& grid = {});

// Side-1 points in the neighborhood of x0 with varied l- and Case I/II.
std::vector<BPoint> sample_near(const BPoint& x0, int n, unsigned seed = 0);
VerifyReport verify_x0(const BPoint& x0, int samples = 6, unsigned seed = 0);

struct LibraryPoint {
    BPoint x0;
    std::string label;
};
// Degenerate base points covering cases 0i, 0ii and 1.
std::vector<LibraryPoint> x0_library(long p);

// Seed from ATLAS_SEED, 0 when unset.
unsigned env_seed();

}  // namespace atlas
