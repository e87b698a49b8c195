#include "scpn/field.hpp"

#include <atomic>

namespace scpn {

namespace {
std::atomic<double> g_zero_threshold{1e-12};
}

double float_zero_threshold() { return g_zero_threshold.load(std::memory_order_relaxed); }

void set_float_zero_threshold(double value) { g_zero_threshold.store(value, std::memory_order_relaxed); }

} // namespace scpn
