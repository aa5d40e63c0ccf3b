#include "oppsim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oppsim/errors.hpp"

namespace oppsim {
namespace {

constexpr double kEps = 1e-9;
constexpr double kArcStepRad = 20.0 * std::numbers::pi / 180.0;

Position lerp(const Position& a, const Position& b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

}  // namespace

const char* to_string(MobilityMode m) {
  switch (m) {
    case MobilityMode::Normal: return "normal";
    case MobilityMode::Waiting: return "waiting";
    case MobilityMode::Fleeing: return "fleeing";
    case MobilityMode::TravelingToEvent: return "traveling";
    case MobilityMode::AtEvent: return "at_event";
  }
  return "?";
}

CellGrid::CellGrid(double width_m, double height_m, double cell_size_m)
    : width_(width_m), height_(height_m), size_(cell_size_m) {
  cols_ = std::max(1, static_cast<int>(std::ceil(width_ / size_)));
  rows_ = std::max(1, static_cast<int>(std::ceil(height_ / size_)));
}

int CellGrid::cell_of(const Position& p) const {
  const int cx = std::clamp(static_cast<int>(p.x / size_), 0, cols_ - 1);
  const int cy = std::clamp(static_cast<int>(p.y / size_), 0, rows_ - 1);
  return cy * cols_ + cx;
}

Position CellGrid::center_of(int cell) const {
  const int cx = cell % cols_;
  const int cy = cell / cols_;
  const double x0 = cx * size_;
  const double y0 = cy * size_;
  const double x1 = std::min(x0 + size_, width_);
  const double y1 = std::min(y0 + size_, height_);
  return {(x0 + x1) / 2.0, (y0 + y1) / 2.0};
}

Position CellGrid::sample_point(int cell, RngStream& stream) const {
  const int cx = cell % cols_;
  const int cy = cell / cols_;
  const double x0 = cx * size_;
  const double y0 = cy * size_;
  const double x1 = std::min(x0 + size_, width_);
  const double y1 = std::min(y0 + size_, height_);
  return {stream.uniform(x0, x1), stream.uniform(y0, y1)};
}

Mobility::Mobility(const MobilityParams& params, const Area& area)
    : params_(params),
      area_(area),
      grid_(area.width_m, area.height_m, params.cell_size_m) {}

MobilityState Mobility::make_state(int node_id, RngStream& stream) const {
  MobilityState s;
  s.node_id = node_id;
  s.home = {stream.uniform(0.0, area_.width_m),
            stream.uniform(0.0, area_.height_m)};
  s.position = s.home;
  s.mode = MobilityMode::Waiting;
  s.wait_until = 0.0;  // expired: the first advance starts a SWIM leg
  s.seen_counts.assign(static_cast<std::size_t>(grid_.count()), 0.0);
  return s;
}

std::vector<double> Mobility::cell_weights(const MobilityState& state) const {
  const int n = grid_.count();
  double seen_total = 0.0;
  for (double c : state.seen_counts) {
    seen_total += c;
  }
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double d = distance(state.home, grid_.center_of(i));
    const double decay = 1.0 / (1.0 + d / params_.cell_size_m);
    double weight = params_.alpha * decay * decay;
    if (seen_total > 0.0) {
      weight += (1.0 - params_.alpha) *
                (state.seen_counts[static_cast<std::size_t>(i)] / seen_total);
    }
    w[static_cast<std::size_t>(i)] = weight;
  }
  return w;
}

Position Mobility::next_destination(const MobilityState& state,
                                    RngStream& stream) const {
  const std::vector<double> weights = cell_weights(state);
  const double pad = 1.0 + params_.flee_margin;

  Position best{};
  double best_clearance = -std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::size_t cell = stream.pick_weighted(weights);
    const Position p = grid_.sample_point(static_cast<int>(cell), stream);
    if (state.avoided_zones.empty()) {
      return p;
    }
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& z : state.avoided_zones) {
      clearance =
          std::min(clearance, distance(p, z.center) - z.radius_m * pad);
    }
    if (clearance >= 0.0) {
      return p;
    }
    if (clearance > best_clearance) {
      best_clearance = clearance;
      best = p;
    }
  }
  // Everything sampled lay inside some zone; take the least-bad point.
  return best;
}

double Mobility::speed_for(MobilityMode mode) const {
  return mode == MobilityMode::Fleeing ? params_.flee_speed_mps
                                       : params_.speed_mps;
}

void Mobility::begin_wait(MobilityState& state, RngStream& stream) const {
  const double wait = stream.power_law(params_.wait_min_s, params_.wait_max_s,
                                       params_.wait_slope);
  state.wait_until = state.clock + wait;
  state.mode = MobilityMode::Waiting;
}

void Mobility::start_swim_leg(MobilityState& state, RngStream& stream) const {
  const Position dest = next_destination(state, stream);
  state.path = route(state.position, dest, state.avoided_zones);
  state.mode = MobilityMode::Normal;
}

void Mobility::arrive(MobilityState& state, RngStream& stream) const {
  switch (state.mode) {
    case MobilityMode::TravelingToEvent:
      if (state.active_visit.has_value() &&
          state.clock < state.active_visit->end) {
        state.mode = MobilityMode::AtEvent;
      } else {
        // Arrived after the event ended; the visit was attempted only.
        state.active_visit.reset();
        begin_wait(state, stream);
      }
      break;
    case MobilityMode::Normal:
    case MobilityMode::Fleeing:
    default:
      begin_wait(state, stream);
      break;
  }
}

Position Mobility::advance(MobilityState& state, double dt,
                           RngStream& stream) const {
  const SimTime until = state.clock + dt;
  while (state.clock < until) {
    switch (state.mode) {
      case MobilityMode::Waiting: {
        if (state.wait_until <= until) {
          state.clock = std::max(state.clock, state.wait_until);
          start_swim_leg(state, stream);
        } else {
          state.clock = until;
        }
        break;
      }
      case MobilityMode::AtEvent: {
        const SimTime end = state.active_visit->end;
        if (end <= until) {
          state.clock = std::max(state.clock, end);
          state.active_visit.reset();
          start_swim_leg(state, stream);
        } else {
          state.clock = until;
        }
        break;
      }
      case MobilityMode::Normal:
      case MobilityMode::Fleeing:
      case MobilityMode::TravelingToEvent: {
        if (state.path.empty()) {
          arrive(state, stream);
          break;
        }
        const Position target = state.path.front();
        const double speed = speed_for(state.mode);
        const double dist = distance(state.position, target);
        const SimTime arrival = state.clock + dist / speed;
        if (arrival <= until) {
          state.position = target;
          state.clock = arrival;
          state.path.pop_front();
          if (state.path.empty()) {
            arrive(state, stream);
          }
        } else {
          const double frac = (until - state.clock) * speed / dist;
          state.position = lerp(state.position, target, frac);
          state.clock = until;
        }
        break;
      }
    }
  }
  return state.position;
}

void Mobility::note_seen(MobilityState& state, int neighbor_count) const {
  if (neighbor_count <= 0) {
    return;
  }
  state.seen_counts[static_cast<std::size_t>(grid_.cell_of(state.position))] +=
      static_cast<double>(neighbor_count);
}

std::optional<SimTime> Mobility::command_visit(MobilityState& state,
                                               const Position& addr,
                                               SimTime start, SimTime end,
                                               SimTime now) const {
  if (!(start < end)) {
    return std::nullopt;
  }
  const double dist = distance(state.position, addr);
  const double travel = dist / params_.speed_mps;
  SimTime departure = start - travel;
  if (departure < now) {
    departure = now;
  }
  if (departure + travel > end) {
    return std::nullopt;  // cannot arrive before the event ends
  }
  // First accepted wins: reject anything overlapping a queued or active
  // visit's occupied interval [departure, end].
  const auto overlaps = [&](const ScheduledVisit& v) {
    return departure <= v.end && v.departure <= end;
  };
  for (const auto& v : state.visit_queue) {
    if (overlaps(v)) {
      return std::nullopt;
    }
  }
  if (state.active_visit.has_value() && overlaps(*state.active_visit)) {
    return std::nullopt;
  }
  ScheduledVisit v{addr, start, end, departure};
  const auto pos = std::upper_bound(
      state.visit_queue.begin(), state.visit_queue.end(), v,
      [](const ScheduledVisit& a, const ScheduledVisit& b) {
        return a.departure < b.departure;
      });
  state.visit_queue.insert(pos, v);
  return departure;
}

bool Mobility::depart_for_visit(MobilityState& state, SimTime /*now*/,
                                RngStream& /*stream*/) const {
  if (state.visit_queue.empty()) {
    return false;
  }
  const ScheduledVisit v = state.visit_queue.front();
  state.visit_queue.erase(state.visit_queue.begin());
  if (state.mode == MobilityMode::Fleeing) {
    return false;  // fleeing preempts the visit
  }
  for (const auto& z : state.avoided_zones) {
    if (distance(v.addr, z.center) <= z.radius_m) {
      return false;  // refuse to walk into a known danger zone
    }
  }
  state.active_visit = v;
  state.path = route(state.position, v.addr, state.avoided_zones);
  state.mode = MobilityMode::TravelingToEvent;
  return true;
}

void Mobility::command_flee(MobilityState& state, const Position& center,
                            double radius_m, SimTime /*now*/,
                            RngStream& stream) const {
  const DangerZone zone{center, radius_m};
  if (std::find(state.avoided_zones.begin(), state.avoided_zones.end(),
                zone) == state.avoided_zones.end()) {
    state.avoided_zones.push_back(zone);
  }
  state.active_visit.reset();  // fleeing interrupts any visit
  state.path.clear();

  std::vector<Position> waypoints;
  if (params_.flee_policy == FleePolicy::SwimOutside) {
    // Resample SWIM destinations until one clears the zone, then travel at
    // flee speed; falls back to the radial escape if nothing clears.
    const Position dest = next_destination(state, stream);
    if (distance(dest, center) > radius_m) {
      state.path = route(state.position, dest, state.avoided_zones);
      state.mode = MobilityMode::Fleeing;
      return;
    }
  }
  waypoints = radial_escape(state.position, center, radius_m, stream);
  state.path.assign(waypoints.begin(), waypoints.end());
  state.mode = MobilityMode::Fleeing;
}

std::vector<Position> Mobility::radial_escape(const Position& pos,
                                              const Position& center,
                                              double radius_m,
                                              RngStream& stream) const {
  const double w = area_.width_m;
  const double h = area_.height_m;
  const Position corners[4] = {{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};

  double target_dist = radius_m * (1.0 + params_.flee_margin);
  double reachable = 0.0;
  for (const auto& c : corners) {
    reachable = std::max(reachable, distance(c, center));
  }
  target_dist = std::min(target_dist, reachable);

  const double d = distance(pos, center);
  if (d >= target_dist) {
    return {pos};  // already beyond the escape distance
  }

  double ux;
  double uy;
  if (d > 0.0) {
    ux = (pos.x - center.x) / d;
    uy = (pos.y - center.y) / d;
  } else {
    const double ang = stream.uniform(0.0, 2.0 * std::numbers::pi);
    ux = std::cos(ang);
    uy = std::sin(ang);
  }

  // Farthest point along the escape ray that stays inside the area.
  double t_area = std::numeric_limits<double>::infinity();
  int side = -1;  // 0 bottom, 1 right, 2 top, 3 left (= boundary edge index)
  if (ux > 0.0 && (w - center.x) / ux < t_area) {
    t_area = (w - center.x) / ux;
    side = 1;
  }
  if (ux < 0.0 && -center.x / ux < t_area) {
    t_area = -center.x / ux;
    side = 3;
  }
  if (uy > 0.0 && (h - center.y) / uy < t_area) {
    t_area = (h - center.y) / uy;
    side = 2;
  }
  if (uy < 0.0 && -center.y / uy < t_area) {
    t_area = -center.y / uy;
    side = 0;
  }

  if (t_area >= target_dist) {
    return {{center.x + ux * target_dist, center.y + uy * target_dist}};
  }

  // The ray exits the area before clearing the zone: go to the boundary and
  // walk it until far enough from the center.
  Position b = area_.clamp({center.x + ux * t_area, center.y + uy * t_area});
  switch (side) {
    case 0: b.y = 0.0; break;
    case 1: b.x = w; break;
    case 2: b.y = h; break;
    case 3: b.x = 0.0; break;
    default: break;
  }

  std::vector<Position> out{b};

  // Walk direction: the perimeter direction that initially gains distance.
  const Position e0 = corners[side];
  const Position e1 = corners[(side + 1) % 4];
  double tx = e1.x - e0.x;
  double ty = e1.y - e0.y;
  const double tlen = std::hypot(tx, ty);
  tx /= tlen;
  ty /= tlen;
  const double gain = tx * (b.x - center.x) + ty * (b.y - center.y);
  bool ccw;
  if (gain > kEps) {
    ccw = true;
  } else if (gain < -kEps) {
    ccw = false;
  } else {
    ccw = distance(e1, center) >= distance(e0, center);
  }

  Position cur = b;
  int edge = side;
  for (int hop = 0; hop < 8; ++hop) {
    const Position corner = ccw ? corners[(edge + 1) % 4] : corners[edge];
    const double dx = corner.x - cur.x;
    const double dy = corner.y - cur.y;
    const double len = std::hypot(dx, dy);
    if (len > 0.0) {
      const double sx = dx / len;
      const double sy = dy / len;
      const double px = cur.x - center.x;
      const double py = cur.y - center.y;
      const double bb = sx * px + sy * py;
      const double cc = px * px + py * py - target_dist * target_dist;
      const double disc = bb * bb - cc;
      if (disc >= 0.0) {
        const double s = -bb + std::sqrt(disc);
        if (s >= 0.0 && s <= len) {
          out.push_back({cur.x + sx * s, cur.y + sy * s});
          return out;
        }
      }
    }
    out.push_back(corner);
    cur = corner;
    edge = ccw ? (edge + 1) % 4 : (edge + 3) % 4;
  }

  // Numerical corner case: settle for the farthest corner.
  Position far = corners[0];
  for (const auto& c : corners) {
    if (distance(c, center) > distance(far, center)) {
      far = c;
    }
  }
  out.push_back(far);
  return out;
}

std::deque<Position> Mobility::route(
    const Position& from, const Position& to,
    const std::vector<DangerZone>& zones) const {
  std::vector<Position> poly{from, to};

  for (const auto& z : zones) {
    if (distance(from, z.center) <= z.radius_m) {
      // Leaving from inside this zone; a detour cannot help.
      continue;
    }
    const double pad = z.radius_m * (1.0 + params_.flee_margin);
    std::vector<Position> next;
    next.push_back(poly.front());
    for (std::size_t i = 1; i < poly.size(); ++i) {
      const Position p = next.back();
      const Position q = poly[i];
      // Detour radius shrinks to the endpoint distances so points in the
      // pad annulus stay reachable; both stay outside the zone itself.
      const double r_eff =
          std::min({pad, distance(p, z.center), distance(q, z.center)});
      const double dx = q.x - p.x;
      const double dy = q.y - p.y;
      const double len2 = dx * dx + dy * dy;
      if (len2 <= 0.0 || r_eff <= 0.0) {
        next.push_back(q);
        continue;
      }
      const double t_close = std::clamp(
          ((z.center.x - p.x) * dx + (z.center.y - p.y) * dy) / len2, 0.0,
          1.0);
      if (distance(lerp(p, q, t_close), z.center) >= r_eff - kEps) {
        next.push_back(q);
        continue;
      }
      // Chord through the padded circle: replace it with an arc.
      const double aa = len2;
      const double bb = 2.0 * (dx * (p.x - z.center.x) + dy * (p.y - z.center.y));
      const double cc = (p.x - z.center.x) * (p.x - z.center.x) +
                        (p.y - z.center.y) * (p.y - z.center.y) -
                        r_eff * r_eff;
      const double disc = bb * bb - 4.0 * aa * cc;
      if (disc <= 0.0) {
        next.push_back(q);
        continue;
      }
      const double sq = std::sqrt(disc);
      const double t1 = std::max((-bb - sq) / (2.0 * aa), 0.0);
      const double t2 = std::min((-bb + sq) / (2.0 * aa), 1.0);
      if (t2 <= t1) {
        next.push_back(q);
        continue;
      }
      const Position x1 = lerp(p, q, t1);
      const Position x2 = lerp(p, q, t2);
      const double a1 = std::atan2(x1.y - z.center.y, x1.x - z.center.x);
      const double a2 = std::atan2(x2.y - z.center.y, x2.x - z.center.x);
      double delta = a2 - a1;
      while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
      while (delta < -std::numbers::pi) delta += 2.0 * std::numbers::pi;
      const int steps =
          std::max(1, static_cast<int>(std::ceil(std::fabs(delta) / kArcStepRad)));
      if (t1 > kEps) {
        next.push_back(x1);
      }
      for (int k = 1; k < steps; ++k) {
        const double ang = a1 + delta * k / steps;
        next.push_back(area_.clamp({z.center.x + r_eff * std::cos(ang),
                                    z.center.y + r_eff * std::sin(ang)}));
      }
      if (t2 < 1.0 - kEps) {
        next.push_back(x2);
      }
      next.push_back(q);
    }
    poly = std::move(next);
  }

  std::deque<Position> path;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    if (path.empty() ? distance(poly[i], from) > kEps
                     : distance(poly[i], path.back()) > kEps) {
      path.push_back(poly[i]);
    }
  }
  if (path.empty()) {
    path.push_back(to);
  }
  return path;
}

}  // namespace oppsim
