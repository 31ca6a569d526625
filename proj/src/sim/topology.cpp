#include "cyberevo/sim/topology.hpp"

#include "cyberevo/rng.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cyberevo::sim {

void TopologyBounds::validate() const {
    if (min_servers < 0 || min_servers > max_servers || min_users < 0 || min_users > max_users ||
        min_services < 1 || min_services > max_services || max_services > static_cast<int>(kServiceCatalog.size()))
        throw Error("invalid topology bounds");
}

std::size_t Topology::total_services() const noexcept {
    std::size_t n = 0;
    for (const auto& h : hosts) n += h.services.size();
    return n;
}

std::string Topology::serialize() const {
    std::ostringstream out;
    for (Zone z : zones) {
        out << zone_name(z) << " servers=" << server_count[index(z)] << " users=" << user_count[index(z)] << '\n';
        for (HostId id : zone_hosts[index(z)]) {
            const Host& h = hosts[id];
            out << "  " << h.id << ' ' << h.name << (h.server ? " server" : " user") << " services=";
            for (std::size_t i = 0; i < h.services.size(); ++i)
                out << (i ? "," : "") << kServiceCatalog[h.services[i]];
            out << '\n';
        }
    }
    return out.str();
}

Topology generate_topology(std::uint64_t seed, const TopologyBounds& bounds) {
    bounds.validate();
    Rng rng(derive_seed(seed, {0x70701}));
    Topology topo;
    std::vector<std::uint8_t> catalog(kServiceCatalog.size());
    std::iota(catalog.begin(), catalog.end(), std::uint8_t{0});

    for (Zone z : kAllZones) {
        if (z == Zone::Internet) continue;
        const int servers = static_cast<int>(rng.uniform_int(bounds.min_servers, bounds.max_servers));
        const int users = static_cast<int>(rng.uniform_int(bounds.min_users, bounds.max_users));
        topo.server_count[index(z)] = servers;
        topo.user_count[index(z)] = users;
        for (int i = 0; i < servers + users; ++i) {
            Host h;
            h.id = static_cast<HostId>(topo.hosts.size());
            h.zone = z;
            h.server = i < servers;
            h.name = std::string(zone_name(z)) + (h.server ? "_server_host_" : "_user_host_") +
                     std::to_string(h.server ? i : i - servers);
            const auto n_services = static_cast<std::size_t>(rng.uniform_int(bounds.min_services, bounds.max_services));
            auto pool = catalog;
            std::shuffle(pool.begin(), pool.end(), rng.engine());
            h.services.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_services));
            std::sort(h.services.begin(), h.services.end());
            topo.zone_hosts[index(z)].push_back(h.id);
            topo.hosts.push_back(std::move(h));
        }
    }
    return topo;
}

} // namespace cyberevo::sim
