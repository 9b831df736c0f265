#pragma once

namespace flipdist::config {

// Multiplier applied to ceil(1/width) when deriving a farey_search step cap
// from a lower bound on the interval width. The Cauchy bound under-estimates
// interval widths; the multiplier absorbs the slack.
inline constexpr long kFareyCapMultiplier = 64;

// PointSet constructors run the full exhaustive general-position check up to
// this size; above it only duplicates are rejected and callers are expected
// to run collinear_scan explicitly (reduction instances do).
inline constexpr int kPointSetAutoGpLimit = 2048;

// Default node cap for flip_distance / enumerate_flip_graph searches.
inline constexpr long kSearchNodeCapDefault = 4'000'000;

// Polynomial cap on coordinate denominator bit lengths of reduction
// instances, checked by the instance validator: bits <= coeff * n^3 for an
// n-vertex input graph. Calibrated from assembled instances (K4 and the
// 6..10-vertex cubic graphs land well below it).
inline constexpr long kDenominatorBitCapCoeff = 64;

// Full O(N^2) collinearity scans are run by the instance validator up to
// this point count by default (the K4 instance is ~24k points). Larger
// instances run the scan only when explicitly requested.
inline constexpr int kInstanceFullScanLimit = 60'000;

// Environment variable naming the instance cache directory.
inline constexpr const char* kCacheDirEnv = "FLIPDIST_CACHE_DIR";

}  // namespace flipdist::config
