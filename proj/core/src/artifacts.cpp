#include "scrap/artifacts.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

#include "scrap/errors.hpp"

namespace scrap {

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << trajectory_header << '\n';
  const bool drive = tr.stark_shift.size() == tr.states.size();
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const auto& s = tr.states[i];
    fmt::print(os, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", tr.grid.at(i), s.rn,
               s.rgn.real(), s.rgn.imag(), std::abs(s.rgn), drive ? tr.stark_shift[i] : 0.0,
               drive ? tr.r1_abs[i] : 0.0);
  }
}

void write_slice_csv(std::ostream& os, const DepthSnapshot& snap) {
  const FieldSlice& f = snap.fields;
  os << slice_header << '\n';
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    fmt::print(os, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", f.grid.at(i), std::norm(f.g1[i]),
               std::norm(f.g2[i]), std::norm(f.gmix[i]), snap.rn[i], snap.coh[i]);
}

void write_metrics_csv(std::ostream& os, const PropagationRecord& rec) {
  for (const auto& m : rec.depth_metrics)
    if (!m) throw ConfigError("propagation run has no conversion metrics (zero probe at entry)");
  os << metrics_header << '\n';
  for (std::size_t i = 0; i < rec.xi_samples.size(); ++i) {
    const auto& m = rec.depth_metrics[i];
    fmt::print(os, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", rec.xi_samples[i],
               m->eps_ph.pump, m->eps_ph.probe, m->eps_ph.generated, m->w_ph_max.probe, m->w_ph_max.generated,
               m->g1_energy_ratio);
  }
}

}  // namespace scrap
