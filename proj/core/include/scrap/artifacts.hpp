#pragma once

// CSV writers for the artifacts consumed by downstream plotting. Values use
// '.' decimals, 12 significant digits and '\n' line endings; column order
// is fixed by the header constants below.

#include <iosfwd>
#include <string_view>

#include "scrap/propagation.hpp"
#include "scrap/twolevel.hpp"

namespace scrap {

inline constexpr std::string_view trajectory_header = "T,r_n,Re(r_gn),Im(r_gn),|r_gn|,Omega_St,r1_abs";
inline constexpr std::string_view slice_header = "T,|g1|^2,|g2|^2,|gmix|^2,r_n,|r_gn|";
inline constexpr std::string_view metrics_header =
    "Z,eps_ph_g1,eps_ph_g2,eps_ph_gmix,wph_g2,wph_gmix,g1_energy_ratio";

/// Omega_St and r1_abs columns are written as 0 when the drive was not
/// recorded.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

void write_slice_csv(std::ostream& os, const DepthSnapshot& snap);

/// One row per accepted depth. Throws ConfigError if the run carries no
/// metrics (zero probe at entry).
void write_metrics_csv(std::ostream& os, const PropagationRecord& rec);

}  // namespace scrap
