#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace cbloch {

// Observables recorded during a run. Times are in natural units (1/J);
// tunneling_period converts them to T_J. Snapshot populations are indexed by
// array position; first_site is the label l of position 0.
struct Trajectory {
    double tunneling_period = 0.0;
    std::ptrdiff_t first_site = 0;
    std::vector<double> times;
    std::vector<double> m1;
    std::vector<double> m2;
    std::vector<double> sigma;
    std::vector<double> edge_mass;
    std::map<double, std::vector<double>> snapshots;

    std::size_t size() const { return times.size(); }
    double t_end() const { return times.empty() ? 0.0 : times.back(); }
};

} // namespace cbloch
