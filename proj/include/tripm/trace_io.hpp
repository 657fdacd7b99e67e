#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tripm/barrier.hpp"
#include "tripm/gd.hpp"
#include "tripm/ipm.hpp"

namespace tripm {

// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

// Canonical columns k,psi,grad_norm,min_slack,y_norm1,r,alpha,delta,model,
// s_ratio,fj1,fj2; wide mode appends x0..x{n-1} so the trace is loss-free.
void write_trace_csv(std::ostream& os, const std::vector<IterateRecord>& trace,
                     bool wide = true);

void write_gd_trace_csv(std::ostream& os, const GDTrace& trace, bool wide = true);

std::string certificate_to_json(const Certificate& cert);

}  // namespace tripm
