#include "mobilecc/energy.hpp"

#include "mobilecc/topology.hpp"

namespace mobilecc {

double node_energy(const EnergyLedger& ledger, EnergyScale scale) {
  const double charge = static_cast<double>(ledger.transmit_ticks) * kTransmitMilliAmps +
                        static_cast<double>(ledger.listen_ticks) * kListenMilliAmps +
                        static_cast<double>(ledger.cpu_ticks) * kCpuMilliAmps +
                        static_cast<double>(ledger.lpm_ticks) * kLpmMilliAmps;
  if (scale == EnergyScale::literal) return charge * kSupplyVolts / 4096.0 * 8.0;
  return charge * kSupplyVolts / static_cast<double>(kTicksPerSecond);
}

double total_energy(const Network& network, EnergyScale scale) {
  double total = 0.0;
  for (const auto& node : network.nodes()) total += node_energy(node.energy, scale);
  return total;
}

}  // namespace mobilecc
