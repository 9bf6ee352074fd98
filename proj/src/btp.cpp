#include "cubeperc/btp.hpp"

#include <string>

#include "cubeperc/errors.hpp"

namespace cubeperc {

namespace {

void check_args(int n, std::uint64_t cap) {
  check_dimension(n);
  if (n > kMaxBtpN) throw CapacityError("BTP limited to n <= " + std::to_string(kMaxBtpN));
  if (cap < 1) throw InvalidInput("particle cap must be at least 1");
}

/// Particles as a flat list of positions so a uniform parent is one draw.
class Swarm {
 public:
  explicit Swarm(int n) : n_(n) { positions_.push_back(0); }

  std::uint64_t size() const noexcept { return positions_.size(); }
  double rate() const noexcept { return static_cast<double>(n_) * static_cast<double>(positions_.size()); }

  Mask birth(Stream& stream) {
    const Mask parent = positions_[stream.below(positions_.size())];
    const Mask child = parent ^ (Mask{1} << stream.below(static_cast<std::uint64_t>(n_)));
    positions_.push_back(child);
    return child;
  }

  const std::vector<Mask>& positions() const noexcept { return positions_; }

 private:
  int n_;
  std::vector<Mask> positions_;
};

}  // namespace

BtpPopulation btp_simulate(int n, double t_end, std::uint64_t cap, Stream stream) {
  check_args(n, cap);
  if (!(t_end >= 0.0)) throw RangeError("t_end must be nonnegative");
  BtpPopulation pop;
  pop.n = n;
  pop.cap = cap;
  Swarm swarm(n);
  double t = 0.0;
  for (;;) {
    const double next = t + stream.exponential(swarm.rate());
    if (next > t_end) {
      t = t_end;
      break;
    }
    t = next;
    if (swarm.size() + 1 > cap) {
      pop.status = BtpStatus::overflow;
      break;
    }
    swarm.birth(stream);
  }
  pop.time = t;
  pop.counts.assign(std::size_t{1} << n, 0);
  for (Mask x : swarm.positions()) ++pop.counts[x];
  pop.total = swarm.size();
  return pop;
}

FirstHit btp_first_hit(int n, Mask target, std::uint64_t cap, Stream stream) {
  check_args(n, cap);
  if (target > full_mask(n)) throw InvalidInput("target outside the cube");
  if (target == 0) return {0.0, false};
  Swarm swarm(n);
  double t = 0.0;
  for (;;) {
    t += stream.exponential(swarm.rate());
    if (swarm.size() + 1 > cap) return {t, true};
    if (swarm.birth(stream) == target) return {t, false};
  }
}

}  // namespace cubeperc
