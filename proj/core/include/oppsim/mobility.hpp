#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "oppsim/geometry.hpp"
#include "oppsim/kernel.hpp"
#include "oppsim/rng.hpp"
#include "oppsim/scenario.hpp"

namespace oppsim {

enum class MobilityMode { Normal, Waiting, Fleeing, TravelingToEvent, AtEvent };

const char* to_string(MobilityMode m);

struct ScheduledVisit {
  Position addr;
  SimTime start = 0.0;
  SimTime end = 0.0;
  SimTime departure = 0.0;  // computed at command time, never after start
};

struct DangerZone {
  Position center;
  double radius_m = 0.0;

  bool operator==(const DangerZone&) const = default;
};

// Square cells tiling the area; edge cells may be cut off by the border.
class CellGrid {
 public:
  CellGrid(double width_m, double height_m, double cell_size_m);

  int count() const { return cols_ * rows_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int cell_of(const Position& p) const;
  Position center_of(int cell) const;
  Position sample_point(int cell, RngStream& stream) const;

 private:
  double width_;
  double height_;
  double size_;
  int cols_;
  int rows_;
};

struct MobilityState {
  int node_id = 0;
  Position position;
  Position home;
  MobilityMode mode = MobilityMode::Waiting;
  SimTime wait_until = 0.0;
  // Per-cell visitation popularity, fed by neighbor sightings.
  std::vector<double> seen_counts;
  // Accepted, not yet departed visits, sorted by departure time.
  std::vector<ScheduledVisit> visit_queue;
  // Danger zones this node has fled; SWIM destinations and routes keep out.
  std::vector<DangerZone> avoided_zones;
  // Remaining waypoints of the current leg.
  std::deque<Position> path;
  std::optional<ScheduledVisit> active_visit;
  // Local clock; advance() moves it forward.
  SimTime clock = 0.0;
};

// SWIM destination selection plus the reactive overrides: immediate flee out
// of a danger zone and scheduled travel to event locations. Stateless apart
// from configuration; all node state lives in MobilityState so the simulation
// can own one state per node.
class Mobility {
 public:
  Mobility(const MobilityParams& params, const Area& area);

  const CellGrid& grid() const { return grid_; }
  const MobilityParams& params() const { return params_; }

  // Home uniform over the area; the node starts there, ready to move.
  MobilityState make_state(int node_id, RngStream& stream) const;

  // SWIM weight per cell: alpha * (1 / (1 + d(home, C)/cell_size))^2 +
  // (1 - alpha) * seen_norm(C).
  std::vector<double> cell_weights(const MobilityState& state) const;

  // Samples a cell proportional to its weight (uniform fallback when all
  // weights are zero), then a uniform point inside it. Resamples to keep out
  // of the node's avoided danger zones.
  Position next_destination(const MobilityState& state,
                            RngStream& stream) const;

  // Immediate move: escape along the ray from the zone center through the
  // node, margin beyond the radius, walking the area boundary when the ray
  // leaves the area. The zone is remembered and avoided afterwards.
  void command_flee(MobilityState& state, const Position& center,
                    double radius_m, SimTime now, RngStream& stream) const;

  // Scheduled move: queues a visit departing early enough to arrive at the
  // event start. Returns the departure time when accepted; nullopt when the
  // event cannot be reached before it ends or the visit would overlap an
  // already accepted one.
  std::optional<SimTime> command_visit(MobilityState& state,
                                       const Position& addr, SimTime start,
                                       SimTime end, SimTime now) const;

  // Departure-time handler for the front of the visit queue. Drops the visit
  // (returns false) when the node is fleeing or the address lies inside a
  // known danger zone.
  bool depart_for_visit(MobilityState& state, SimTime now,
                        RngStream& stream) const;

  // Moves the node dt seconds forward: straight-line motion at the mode's
  // speed, waypoint arrivals, waits, and event attendance are all resolved
  // exactly inside the window. Returns the new position.
  Position advance(MobilityState& state, double dt, RngStream& stream) const;

  // Contact-scan feedback: bumps the popularity of the node's current cell.
  void note_seen(MobilityState& state, int neighbor_count) const;

 private:
  void start_swim_leg(MobilityState& state, RngStream& stream) const;
  void begin_wait(MobilityState& state, RngStream& stream) const;
  void arrive(MobilityState& state, RngStream& stream) const;
  double speed_for(MobilityMode mode) const;

  std::vector<Position> radial_escape(const Position& pos,
                                      const Position& center, double radius_m,
                                      RngStream& stream) const;

  // Polyline from -> to detouring around the zones' padded circles. The
  // leading point (from) is not included.
  std::deque<Position> route(const Position& from, const Position& to,
                             const std::vector<DangerZone>& zones) const;

  MobilityParams params_;
  Area area_;
  CellGrid grid_;
};

}  // namespace oppsim
