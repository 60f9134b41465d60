#include <cmath>
#include <sstream>

#include "fsched/lp.hpp"

namespace fsched::lp {

namespace {

std::string var_name(const LinearProgram& lp, int j) {
  const std::string& n = lp.variable(j).name;
  return n.empty() ? "x" + std::to_string(j) : n;
}

void write_terms(std::ostringstream& out, const LinearProgram& lp, const std::vector<Entry>& terms) {
  bool first = true;
  for (const Entry& e : terms) {
    if (e.value == 0.0) continue;
    out << (e.value < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (std::abs(e.value) != 1.0) out << std::abs(e.value) << ' ';
    out << var_name(lp, e.index);
    first = false;
  }
  if (first) out << "0 " << (lp.num_variables() > 0 ? var_name(lp, 0) : "x0");
}

}  // namespace

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  out << "Minimize\n obj: ";
  std::vector<Entry> objective;
  for (int j = 0; j < lp.num_variables(); ++j) objective.push_back({j, lp.variable(j).cost});
  write_terms(out, lp, objective);
  out << "\nSubject To\n";
  for (int r = 0; r < lp.num_rows(); ++r) {
    const Constraint& c = lp.row(r);
    out << ' ' << (c.name.empty() ? "c" + std::to_string(r) : c.name) << ": ";
    write_terms(out, lp, c.entries);
    out << (c.sense == Sense::kLessEqual ? " <= " : c.sense == Sense::kEqual ? " = " : " >= ") << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const Variable& v = lp.variable(j);
    const std::string name = var_name(lp, j);
    if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
      out << ' ' << name << " free\n";
    } else {
      out << ' ' << (std::isfinite(v.lower) ? std::to_string(v.lower) : std::string("-inf")) << " <= " << name
          << " <= " << (std::isfinite(v.upper) ? std::to_string(v.upper) : std::string("+inf")) << '\n';
    }
  }
  bool any = false;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!lp.variable(j).integer) continue;
    if (!any) out << "General\n";
    any = true;
    out << ' ' << var_name(lp, j) << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace fsched::lp
