#include "manet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "manet/kernels.hpp"

namespace manet {

MotionLeg draw_next_leg(double ox, double oy, Time now,
                        const MobilityParams& p, RngStream& rng) {
  MotionLeg leg;
  leg.origin_x = ox;
  leg.origin_y = oy;
  leg.dest_x = rng.uniform(0.0, p.width);
  leg.dest_y = rng.uniform(0.0, p.height);
  leg.speed = rng.uniform(p.v_min, p.v_max);
  leg.depart = now;
  double dx = leg.dest_x - ox;
  double dy = leg.dest_y - oy;
  leg.travel = std::sqrt(dx * dx + dy * dy) / leg.speed;
  leg.pause_after = p.pause_s;
  return leg;
}

Mobility::Mobility(int n, const MobilityParams& p, std::uint64_t master_seed)
    : params_(p), count_(static_cast<std::size_t>(n)) {
  RngStream topo(master_seed, "topology");
  origin_x_.resize(count_);
  origin_y_.resize(count_);
  vel_x_.resize(count_);
  vel_y_.resize(count_);
  depart_.resize(count_);
  travel_.resize(count_);
  leg_end_.resize(count_);
  streams_.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    streams_.emplace_back(master_seed, "mobility/" + std::to_string(i));
    origin_x_[i] = topo.uniform(0.0, p.width);
    origin_y_[i] = topo.uniform(0.0, p.height);
    vel_x_[i] = 0.0;
    vel_y_[i] = 0.0;
    depart_[i] = 0.0;
    travel_[i] = 0.0;
    leg_end_[i] = 0.0;  // forces a first leg draw at t >= 0
  }
}

void Mobility::advance(std::size_t i, Time t) {
  while (t >= leg_end_[i]) {
    double end = leg_end_[i];
    // Node currently rests at the end of its previous leg.
    double x = origin_x_[i] + vel_x_[i] * travel_[i];
    double y = origin_y_[i] + vel_y_[i] * travel_[i];
    MotionLeg leg = draw_next_leg(x, y, end, params_, streams_[i]);
    origin_x_[i] = leg.origin_x;
    origin_y_[i] = leg.origin_y;
    depart_[i] = leg.depart;
    travel_[i] = leg.travel;
    if (leg.travel > 0.0) {
      vel_x_[i] = (leg.dest_x - leg.origin_x) / leg.travel;
      vel_y_[i] = (leg.dest_y - leg.origin_y) / leg.travel;
    } else {
      vel_x_[i] = 0.0;
      vel_y_[i] = 0.0;
    }
    leg_end_[i] = leg.depart + leg.travel + leg.pause_after;
    if (leg_end_[i] <= end) {
      // Zero-length leg with zero pause; yield to avoid spinning.
      leg_end_[i] = std::nextafter(end, kNever);
    }
  }
}

void Mobility::positions(Time t, double* xs, double* ys) {
  for (std::size_t i = 0; i < count_; ++i) advance(i, t);
  kernels::LegSoA legs{origin_x_.data(), origin_y_.data(), vel_x_.data(),
                       vel_y_.data(),    depart_.data(),   travel_.data()};
  kernels::active().leg_pos(legs, t, xs, ys, count_);
}

std::pair<double, double> Mobility::position_at(NodeId node, Time t) {
  auto i = static_cast<std::size_t>(node);
  advance(i, t);
  double dt = std::min(std::max(t - depart_[i], 0.0), travel_[i]);
  return {origin_x_[i] + vel_x_[i] * dt, origin_y_[i] + vel_y_[i] * dt};
}

}  // namespace manet
