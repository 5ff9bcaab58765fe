#include "manet/routing.hpp"

#include <stdexcept>

#include "manet/aodv.hpp"
#include "manet/dsdv.hpp"
#include "manet/dsr.hpp"

namespace manet {

std::unique_ptr<RoutingProtocol> make_protocol(const std::string& name,
                                               ProtoEnv env,
                                               const ProtoConfig& cfg) {
  if (name == "aodv") return std::make_unique<Aodv>(std::move(env), cfg);
  if (name == "dsr") return std::make_unique<Dsr>(std::move(env), cfg);
  if (name == "dsdv") return std::make_unique<Dsdv>(std::move(env), cfg);
  throw std::invalid_argument("unknown routing protocol: " + name);
}

}  // namespace manet
