#include "tripm/trace_io.hpp"

#include <charconv>
#include <sstream>

namespace tripm {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const std::vector<IterateRecord>& trace,
                     bool wide) {
  os << "k,psi,grad_norm,min_slack,y_norm1,r,alpha,delta,model,s_ratio,fj1,fj2";
  const int n = trace.empty() ? 0 : static_cast<int>(trace.front().x.size());
  if (wide)
    for (int j = 0; j < n; ++j) os << ",x" << j;
  os << "\n";
  for (const auto& rec : trace) {
    os << rec.k << ',' << format_double(rec.psi) << ',' << format_double(rec.grad_norm)
       << ',' << format_double(rec.min_slack) << ',' << format_double(rec.y_norm1)
       << ',' << format_double(rec.r) << ',' << format_double(rec.alpha) << ','
       << format_double(rec.delta) << ',' << format_double(rec.model) << ','
       << format_double(rec.s_ratio) << ',' << (rec.fj1 ? 1 : 0) << ','
       << (rec.fj2 ? 1 : 0);
    if (wide)
      for (int j = 0; j < n; ++j) os << ',' << format_double(rec.x(j));
    os << "\n";
  }
}

void write_gd_trace_csv(std::ostream& os, const GDTrace& trace, bool wide) {
  os << "k,psi,grad_norm,min_slack,alpha,ell1";
  const int n = trace.rows.empty() ? 0 : static_cast<int>(trace.rows.front().x.size());
  if (wide)
    for (int j = 0; j < n; ++j) os << ",x" << j;
  os << "\n";
  for (const auto& rec : trace.rows) {
    os << rec.k << ',' << format_double(rec.psi) << ',' << format_double(rec.grad_norm)
       << ',' << format_double(rec.min_slack) << ',' << format_double(rec.alpha) << ','
       << format_double(rec.ell1);
    if (wide)
      for (int j = 0; j < n; ++j) os << ',' << format_double(rec.x(j));
    os << "\n";
  }
}

std::string certificate_to_json(const Certificate& cert) {
  std::ostringstream os;
  os << "{\n  \"kind\": \"";
  switch (cert.kind) {
    case CertKind::FritzJohn: os << "FritzJohn"; break;
    case CertKind::KKT: os << "KKT"; break;
    case CertKind::Infeasible: os << "Infeasible"; break;
  }
  os << "\",\n  \"x\": [";
  for (int i = 0; i < cert.x.size(); ++i)
    os << (i ? ", " : "") << format_double(cert.x(i));
  os << "],\n";
  if (cert.t) os << "  \"t\": " << format_double(*cert.t) << ",\n";
  os << "  \"y\": [";
  for (int i = 0; i < cert.y.size(); ++i)
    os << (i ? ", " : "") << format_double(cert.y(i));
  os << "],\n  \"residuals\": {";
  bool first = true;
  for (const auto& [name, entry] : cert.residuals) {
    os << (first ? "" : ",") << "\n    \"" << name << "\": {\"value\": "
       << format_double(entry.value) << ", \"bound\": " << format_double(entry.bound)
       << "}";
    first = false;
  }
  os << "\n  }\n}\n";
  return os.str();
}

}  // namespace tripm
