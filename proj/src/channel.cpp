#include "manet/channel.hpp"

#include <algorithm>
#include <cmath>

#include "manet/kernels.hpp"

namespace manet {

Channel::Channel(const RadioParams& rp, const FadingSpec& spec,
                 Mobility* mobility, std::uint64_t master_seed)
    : rp_(rp),
      spec_(spec),
      mobility_(mobility),
      n_(mobility->size()),
      fading_(master_seed, "fading") {
  scratch_x_.resize(n_);
  scratch_y_.resize(n_);
  scratch_d2_.resize(n_);
  scratch_p_.resize(n_);
}

Channel::Channel(const RadioParams& rp, const FadingSpec& spec,
                 std::vector<std::pair<double, double>> positions,
                 std::uint64_t master_seed)
    : rp_(rp),
      spec_(spec),
      mobility_(nullptr),
      n_(static_cast<int>(positions.size())),
      fading_(master_seed, "fading") {
  static_x_.reserve(positions.size());
  static_y_.reserve(positions.size());
  for (auto& p : positions) {
    static_x_.push_back(p.first);
    static_y_.push_back(p.second);
  }
  scratch_d2_.resize(n_);
  scratch_p_.resize(n_);
}

void Channel::fill_powers(NodeId tx, double now, std::vector<double>& out) {
  const double* xs;
  const double* ys;
  if (mobility_ != nullptr) {
    mobility_->positions(now, scratch_x_.data(), scratch_y_.data());
    xs = scratch_x_.data();
    ys = scratch_y_.data();
  } else {
    xs = static_x_.data();
    ys = static_y_.data();
  }
  auto nu = static_cast<std::size_t>(n_);
  auto ti = static_cast<std::size_t>(tx);
  const auto& k = kernels::active();
  k.dist2(xs, ys, xs[ti], ys[ti], scratch_d2_.data(), nu);

  switch (spec_.kind) {
    case PropKind::FreeSpace:
      k.inv_d2(scratch_d2_.data(), friis_const(rp_), scratch_p_.data(), nu);
      break;
    case PropKind::TwoRay: {
      double dc = crossover_distance(rp_);
      k.two_ray(scratch_d2_.data(), friis_const(rp_), two_ray_const(rp_),
                dc * dc, scratch_p_.data(), nu);
      break;
    }
    case PropKind::Shadowing: {
      // Mean power decays as d^-beta from the reference point; the batch
      // kernels only cover the integer-exponent laws, so this path stays
      // scalar.
      double pr_d0 = friis_power(rp_, spec_.ref_dist_m);
      double half_beta = 0.5 * spec_.beta;
      double d0_2 = spec_.ref_dist_m * spec_.ref_dist_m;
      for (std::size_t i = 0; i < nu; ++i) {
        scratch_p_[i] = pr_d0 * std::pow(d0_2 / scratch_d2_[i], half_beta);
      }
      break;
    }
    case PropKind::Rayleigh:
    case PropKind::Rice:
    case PropKind::Nakagami: {
      if (spec_.mean_kind == PropKind::FreeSpace) {
        k.inv_d2(scratch_d2_.data(), friis_const(rp_), scratch_p_.data(), nu);
      } else {
        double dc = crossover_distance(rp_);
        k.two_ray(scratch_d2_.data(), friis_const(rp_), two_ray_const(rp_),
                  dc * dc, scratch_p_.data(), nu);
      }
      break;
    }
  }

  out.assign(scratch_p_.begin(), scratch_p_.end());

  // Stochastic per-receiver factors, drawn in node order so the stream
  // consumption is independent of who listens.
  switch (spec_.kind) {
    case PropKind::Shadowing:
      if (spec_.sigma_db > 0.0) {
        constexpr double kLn10Over10 = 0.2302585092994045684017991454684;
        for (std::size_t i = 0; i < nu; ++i) {
          if (i == ti) continue;
          double x_db = fading_.normal(0.0, spec_.sigma_db);
          out[i] *= std::exp(kLn10Over10 * x_db);
        }
      }
      break;
    case PropKind::Rayleigh:
    case PropKind::Rice:
    case PropKind::Nakagami:
      for (std::size_t i = 0; i < nu; ++i) {
        if (i == ti) continue;
        out[i] *= fading_gain(spec_, fading_);
      }
      break;
    default:
      break;
  }
  out[ti] = 0.0;
}

std::uint64_t Channel::begin_frame(NodeId tx, double now, double duration) {
  prune();
  Frame f;
  f.id = next_id_++;
  f.tx = tx;
  f.tx_power_w = rp_.tx_power_w;
  f.start = now;
  f.end = now + duration;
  fill_powers(tx, now, f.power_w);
  frames_.push_back(std::move(f));
  return frames_.back().id;
}

void Channel::end_frame(std::uint64_t id) {
  for (Frame& f : frames_) {
    if (f.id == id) {
      f.resolved = true;
      break;
    }
  }
  prune();
}

const Channel::Frame* Channel::frame(std::uint64_t id) const {
  for (const Frame& f : frames_) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

void Channel::prune() {
  // A resolved frame is still needed while an unresolved frame that
  // overlaps it (start < its end) exists; frames only ever begin at the
  // present, so nothing in the future can overlap a frame that ended.
  double min_unresolved_start = kNever;
  for (const Frame& f : frames_) {
    if (!f.resolved) {
      min_unresolved_start = std::min(min_unresolved_start, f.start);
    }
  }
  std::erase_if(frames_, [&](const Frame& f) {
    return f.resolved && min_unresolved_start >= f.end;
  });
}

bool Channel::busy_at(NodeId node, double now) const {
  auto ni = static_cast<std::size_t>(node);
  for (const Frame& f : frames_) {
    if (f.start <= now && now < f.end) {
      if (f.tx == node || f.power_w[ni] >= rp_.cs_thresh_w) return true;
    }
  }
  return false;
}

double Channel::busy_until(NodeId node, double now) const {
  auto ni = static_cast<std::size_t>(node);
  double until = now;
  for (const Frame& f : frames_) {
    if (f.start <= now && now < f.end &&
        (f.tx == node || f.power_w[ni] >= rp_.cs_thresh_w)) {
      until = std::max(until, f.end);
    }
  }
  return until;
}

double Channel::interference_w(NodeId node, std::uint64_t id) const {
  const Frame* target = frame(id);
  if (target == nullptr) return 0.0;
  auto ni = static_cast<std::size_t>(node);
  double sum = 0.0;
  for (const Frame& f : frames_) {
    if (f.id == id) continue;
    if (f.start < target->end && target->start < f.end) sum += f.power_w[ni];
  }
  return sum;
}

bool Channel::own_tx_overlaps(NodeId node, double start, double end) const {
  for (const Frame& f : frames_) {
    if (f.tx == node && f.start < end && start < f.end) return true;
  }
  return false;
}

}  // namespace manet
