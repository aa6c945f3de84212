#pragma once

#include <string>

#include "wacasim/io.hpp"
#include "wacasim/netmodel.hpp"


namespace testutil {

inline std::string fixture_path(const std::string& name) { return std::string(WACASIM_FIXTURES) + "/" + name; }

inline wacasim::Topology fixture(const std::string& name) {
    return wacasim::io::parse_topology(wacasim::io::read_file(fixture_path(name)));
}

/// Random deployment with heterogeneous attributes, as the sweep uses.
inline wacasim::Topology random_topology(std::size_t n, double range, wacasim::Seed seed, double side = 100.0) {
    using namespace wacasim;
    Topology t = deploy_uniform(n, side, derive_seed(seed, {0}), range);
    t = assign_power(t, PowerModel::uniform(0.7, 4.0), derive_seed(seed, {1}));
    return assign_signal(t, SignalModel::uniform(), derive_seed(seed, {2}));
}

}  // namespace testutil
