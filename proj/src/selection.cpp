#include "rrhsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace rrhsel {

CandidateSet phase1_distance(const NetworkRealization& net, double r_th)
{
  if (!(r_th > 0.0)) throw std::invalid_argument("phase1_distance: r_th must be > 0");
  CandidateSet out;
  out.criterion = Criterion::distance;
  out.threshold = r_th;
  const double r2 = r_th * r_th;
  for (std::size_t i = 0; i < net.rrh_points.size(); ++i) {
    if (net.rrh_points[i].norm2() < r2) out.indices.push_back(i);
  }
  return out;
}

CandidateSet phase1_power(const NetworkRealization& net, std::span<const double> shadow, double beta,
                          double p_th)
{
  if (!(p_th > 0.0)) throw std::invalid_argument("phase1_power: p_th must be > 0");
  if (shadow.size() != net.rrh_points.size())
    throw std::invalid_argument("phase1_power: one shadowing factor per RRH required");
  CandidateSet out;
  out.criterion = Criterion::power;
  out.threshold = p_th;
  for (std::size_t i = 0; i < net.rrh_points.size(); ++i) {
    const double rx = shadow[i] * pathloss_from_sq(net.rrh_points[i].norm2(), beta);
    if (rx > p_th) out.indices.push_back(i);
  }
  return out;
}

SelectedSet phase2_random(const CandidateSet& cands, int num_selected, CounterEngine& engine,
                          PartialPolicy partial)
{
  if (num_selected < 1) throw std::invalid_argument("phase2_random: L must be >= 1");
  SelectedSet out;
  if (cands.empty()) {
    out.outage = OutageKind::empty_candidates;
    return out;
  }
  const auto wanted = static_cast<std::size_t>(num_selected);
  if (cands.size() < wanted && partial == PartialPolicy::outage) {
    out.outage = OutageKind::insufficient_candidates;
    return out;
  }
  const std::size_t take = std::min(wanted, cands.size());
  out.indices = cands.indices;
  const std::size_t m = out.indices.size();
  for (std::size_t k = 0; k < take; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, m - 1);
    std::swap(out.indices[k], out.indices[pick(engine)]);
  }
  out.indices.resize(take);
  return out;
}

std::optional<std::size_t> select_nearest(const NetworkRealization& net)
{
  if (net.rrh_points.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_d2 = net.rrh_points[0].norm2();
  for (std::size_t i = 1; i < net.rrh_points.size(); ++i) {
    const double d2 = net.rrh_points[i].norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

double sir_single(const NetworkRealization& net, std::size_t s, double beta, double desired_gain,
                  std::span<const double> interferer_gain)
{
  if (s >= net.rrh_points.size()) throw std::out_of_range("sir_single: RRH index out of range");
  if (interferer_gain.size() != net.user_points.size())
    throw std::invalid_argument("sir_single: one interferer gain per user required");
  const Point rrh = net.rrh_points[s];
  double interference = 0.0;
  for (std::size_t i = 0; i < net.user_points.size(); ++i) {
    interference += pathloss_from_sq((rrh - net.user_points[i]).norm2(), beta) * interferer_gain[i];
  }
  const double signal = pathloss_from_sq(rrh.norm2(), beta) * desired_gain;
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double sir_mrc(const NetworkRealization& net, std::span<const std::size_t> selected, double beta,
               std::span<const Fading> desired, std::span<const Fading> interferer)
{
  const std::size_t branches = selected.size();
  const std::size_t users = net.user_points.size();
  if (branches == 0) throw std::invalid_argument("sir_mrc: at least one branch required");
  if (desired.size() != branches || interferer.size() != branches * users)
    throw std::invalid_argument("sir_mrc: fading arrays do not match L x U");

  if (branches == 1) {
    std::vector<double> powers(users);
    for (std::size_t i = 0; i < users; ++i) powers[i] = interferer[i].power;
    return sir_single(net, selected[0], beta, desired[0].power, powers);
  }

  std::vector<std::complex<double>> weight(branches);
  double combined = 0.0;
  for (std::size_t l = 0; l < branches; ++l) {
    if (selected[l] >= net.rrh_points.size()) throw std::out_of_range("sir_mrc: RRH index out of range");
    const double amp = std::sqrt(pathloss_from_sq(net.rrh_points[selected[l]].norm2(), beta));
    weight[l] = std::conj(amp * desired[l].gain());
    combined += std::norm(weight[l]);
  }

  double interference = 0.0;
  for (std::size_t i = 0; i < users; ++i) {
    std::complex<double> z = 0.0;
    for (std::size_t l = 0; l < branches; ++l) {
      const Point rrh = net.rrh_points[selected[l]];
      const double amp = std::sqrt(pathloss_from_sq((rrh - net.user_points[i]).norm2(), beta));
      z += weight[l] * (amp * interferer[l * users + i].gain());
    }
    interference += std::norm(z);
  }
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return combined * combined / interference;
}

}  // namespace rrhsel
