#include "abi/infospace/space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"

namespace abi::infospace {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

Drop& drop_ref(Space& space, DropId id) {
  auto it = space.drops.find(id);
  if (it == space.drops.end()) fail(ErrorKind::InvalidData, "event refers to unknown drop");
  return it->second;
}

// Height after falling for dt, clamped at the ground.
double fallen_height(const Drop& d, double dt, const SpaceConfig& cfg) {
  const auto* f = std::get_if<state::Falling>(&d.state);
  if (!f) return d.position.z;
  return std::max(cfg.ground_height, d.position.z - f->speed * dt);
}

double segment_distance_xy(const Vec3& p, const Vec3& a, const Vec3& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + s * dx), p.y - (a.y + s * dy));
}

bool placement_ok(const Space& space, const Vec3& p) {
  const auto& cfg = space.config;
  for (auto a = space.users.begin(); a != space.users.end(); ++a) {
    for (auto b = std::next(a); b != space.users.end(); ++b) {
      if (segment_distance_xy(p, a->second.head, b->second.head) < cfg.clearance) return false;
    }
  }
  const double min_cos = std::cos(cfg.peripheral_angle_deg * std::numbers::pi / 180.0);
  for (const auto& [id, u] : space.users) {
    const double gx = u.gaze.x, gy = u.gaze.y;
    const double dx = p.x - u.head.x, dy = p.y - u.head.y;
    const double gn = std::hypot(gx, gy), dn = std::hypot(dx, dy);
    if (dn < 1e-9) return false;
    if (gn < 1e-12) continue;  // looking straight up or down
    if ((gx * dx + gy * dy) / (gn * dn) > min_cos) return false;
  }
  return true;
}

}  // namespace

const char* state_name(const DropState& s) {
  return std::visit(overloaded{
                        [](const state::Falling&) { return "falling"; },
                        [](const state::Held&) { return "held"; },
                        [](const state::Pinned&) { return "pinned"; },
                        [](const state::Expanded&) { return "expanded"; },
                        [](const state::Discarded&) { return "discarded"; },
                        [](const state::Expired&) { return "expired"; },
                    },
                    s);
}

bool is_terminal(const DropState& s) {
  return std::holds_alternative<state::Discarded>(s) || std::holds_alternative<state::Expired>(s);
}

bool Drop::visible_to(const UserId& user) const {
  if (scope == Scope::Public) return true;
  return (owner && *owner == user) || shared_with.contains(user);
}

void SpaceConfig::validate() const {
  if (!(cloud_height > ground_height && fall_speed > 0.0 && clearance >= 0.0 && peripheral_angle_deg >= 0.0 &&
        peripheral_angle_deg < 180.0 && spawn_radius > spawn_min_radius && spawn_min_radius >= 0.0 &&
        max_spawn_attempts > 0)) {
    fail(ErrorKind::InvalidConfig, "inconsistent space configuration");
  }
}

std::optional<DropId> event_drop(const Event& e) {
  return std::visit(overloaded{
                        [](const event::UserJoined&) -> std::optional<DropId> { return std::nullopt; },
                        [](const event::PoseUpdated&) -> std::optional<DropId> { return std::nullopt; },
                        [](const event::Advanced&) -> std::optional<DropId> { return std::nullopt; },
                        [](const event::Spawned& s) -> std::optional<DropId> { return s.drop.id; },
                        [](const auto& other) -> std::optional<DropId> { return other.drop; },
                    },
                    e);
}

void apply_event(Space& space, const Event& e) {
  std::visit(overloaded{
                 [&](const event::UserJoined& ev) { space.users[ev.user] = ev.pose; },
                 [&](const event::PoseUpdated& ev) { space.users[ev.user] = ev.pose; },
                 [&](const event::Spawned& ev) {
                   space.drops[ev.drop.id] = ev.drop;
                   space.next_id = std::max(space.next_id, ev.drop.id + 1);
                 },
                 [&](const event::Advanced& ev) {
                   for (auto& [id, d] : space.drops) d.position.z = fallen_height(d, ev.dt, space.config);
                   space.now += ev.dt;
                 },
                 [&](const event::Expired& ev) { drop_ref(space, ev.drop).state = state::Expired{}; },
                 [&](const event::Grabbed& ev) { drop_ref(space, ev.drop).state = state::Held{ev.by}; },
                 [&](const event::Moved& ev) { drop_ref(space, ev.drop).position = ev.to; },
                 [&](const event::Pinned& ev) { drop_ref(space, ev.drop).state = state::Pinned{}; },
                 [&](const event::Discarded& ev) { drop_ref(space, ev.drop).state = state::Discarded{}; },
                 [&](const event::Expanded& ev) {
                   Drop& d = drop_ref(space, ev.drop);
                   d.state = state::Expanded{std::holds_alternative<state::Pinned>(d.state)};
                 },
                 [&](const event::Closed& ev) {
                   Drop& d = drop_ref(space, ev.drop);
                   const auto* x = std::get_if<state::Expanded>(&d.state);
                   if (x && x->pinned) {
                     d.state = state::Pinned{};
                   } else {
                     d.state = state::Falling{space.config.fall_speed};
                   }
                 },
                 [&](const event::Shared& ev) {
                   Drop& d = drop_ref(space, ev.drop);
                   if (ev.with) {
                     d.shared_with.insert(*ev.with);
                   } else {
                     d.scope = Scope::Public;
                     d.shared_with.clear();
                   }
                 },
             },
             e);
}

Space replay(const SpaceConfig& config, const std::vector<Event>& log) {
  Space space;
  space.config = config;
  for (const auto& e : log) apply_event(space, e);
  return space;
}

namespace {

std::vector<Event> commit(Space& space, std::vector<Event> events) {
  for (const auto& e : events) apply_event(space, e);
  return events;
}

void check_pose(const User& pose) {
  if (!finite(pose.head) || !finite(pose.gaze)) fail(ErrorKind::InvalidArgument, "non-finite pose");
}

}  // namespace

std::vector<Event> join(Space& space, const UserId& user, const User& pose) {
  if (user.empty()) fail(ErrorKind::InvalidArgument, "user id must not be empty");
  if (space.users.contains(user)) fail(ErrorKind::InvalidState, "user already joined: " + user);
  check_pose(pose);
  return commit(space, {event::UserJoined{user, pose}});
}

std::vector<Event> update_pose(Space& space, const UserId& user, const User& pose) {
  if (!space.users.contains(user)) fail(ErrorKind::InvalidArgument, "unknown user: " + user);
  check_pose(pose);
  return commit(space, {event::PoseUpdated{user, pose}});
}

std::vector<Event> spawn(Space& space, const std::string& content_ref, const std::optional<UserId>& owner,
                         Scope scope, std::uint64_t seed) {
  space.config.validate();
  if (space.users.empty()) fail(ErrorKind::InvalidState, "spawn needs at least one user");
  if (owner && !space.users.contains(*owner)) fail(ErrorKind::InvalidArgument, "unknown owner: " + *owner);
  if (scope == Scope::Private && !owner) fail(ErrorKind::InvalidArgument, "a private drop needs an owner");

  const Vec3 around = owner ? space.users.at(*owner).head : space.users.begin()->second.head;
  const auto& cfg = space.config;
  Rng rng(derive_seed(seed));
  const double r0 = cfg.spawn_min_radius * cfg.spawn_min_radius;
  const double r1 = cfg.spawn_radius * cfg.spawn_radius;
  for (int attempt = 0; attempt < cfg.max_spawn_attempts; ++attempt) {
    const double r = std::sqrt(uniform(rng, r0, r1));
    const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const Vec3 p{around.x + r * std::cos(phi), around.y + r * std::sin(phi), cfg.cloud_height};
    if (!placement_ok(space, p)) continue;
    Drop d;
    d.id = space.next_id;
    d.content_ref = content_ref;
    d.owner = owner;
    d.scope = scope;
    d.position = p;
    d.state = state::Falling{cfg.fall_speed};
    d.spawned_at = space.now;
    return commit(space, {event::Spawned{std::move(d)}});
  }
  fail(ErrorKind::PlacementFailure, "no spawn position satisfies the placement constraints");
}

std::vector<Event> tick(Space& space, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) fail(ErrorKind::InvalidArgument, "tick needs a finite dt >= 0");
  std::vector<Event> events{event::Advanced{dt}};
  for (const auto& [id, d] : space.drops) {
    if (std::holds_alternative<state::Falling>(d.state) &&
        fallen_height(d, dt, space.config) <= space.config.ground_height) {
      events.push_back(event::Expired{id});
    }
  }
  return commit(space, std::move(events));
}

const char* to_string(GestureKind kind) {
  switch (kind) {
    case GestureKind::Grab: return "grab";
    case GestureKind::Move: return "move";
    case GestureKind::Release: return "release";
    case GestureKind::Throw: return "throw";
    case GestureKind::Show: return "show";
    case GestureKind::Close: return "close";
    case GestureKind::Share: return "share";
  }
  return "?";
}

std::optional<GestureKind> gesture_from_string(std::string_view name) {
  for (auto k : {GestureKind::Grab, GestureKind::Move, GestureKind::Release, GestureKind::Throw, GestureKind::Show,
                 GestureKind::Close, GestureKind::Share}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<Event> apply_gesture(Space& space, const UserId& actor, const Gesture& g) {
  if (!space.users.contains(actor)) fail(ErrorKind::InvalidArgument, "unknown user: " + actor);
  const auto it = space.drops.find(g.drop);
  if (it == space.drops.end()) fail(ErrorKind::InvalidArgument, "unknown drop");
  const Drop& d = it->second;
  if (!d.visible_to(actor)) fail(ErrorKind::NotVisible, "drop is not visible to " + actor);
  if (is_terminal(d.state)) fail(ErrorKind::InvalidState, std::string("drop is ") + state_name(d.state));

  const auto* held = std::get_if<state::Held>(&d.state);
  auto require_holder = [&] {
    if (!held) fail(ErrorKind::InvalidState, "drop is not held");
    if (held->by != actor) fail(ErrorKind::PermissionDenied, "drop is held by another user");
  };

  switch (g.kind) {
    case GestureKind::Grab:
      if (held) {
        if (held->by != actor) fail(ErrorKind::PermissionDenied, "drop is held by another user");
        fail(ErrorKind::InvalidState, "drop is already held");
      }
      return commit(space, {event::Grabbed{d.id, actor}});
    case GestureKind::Move:
      require_holder();
      if (!finite(g.position)) fail(ErrorKind::InvalidArgument, "non-finite position");
      return commit(space, {event::Moved{d.id, g.position}});
    case GestureKind::Release:
      require_holder();
      return commit(space, {event::Pinned{d.id}});
    case GestureKind::Throw:
      require_holder();
      return commit(space, {event::Discarded{d.id}});
    case GestureKind::Show:
      if (!std::holds_alternative<state::Falling>(d.state) && !std::holds_alternative<state::Pinned>(d.state)) {
        fail(ErrorKind::InvalidState, std::string("cannot expand a drop that is ") + state_name(d.state));
      }
      return commit(space, {event::Expanded{d.id}});
    case GestureKind::Close:
      if (!std::holds_alternative<state::Expanded>(d.state)) fail(ErrorKind::InvalidState, "drop is not expanded");
      return commit(space, {event::Closed{d.id}});
    case GestureKind::Share:
      if (held && held->by != actor) fail(ErrorKind::PermissionDenied, "drop is held by another user");
      if (d.scope == Scope::Public) fail(ErrorKind::InvalidState, "drop is already public");
      if (g.share_with) {
        if (!space.users.contains(*g.share_with)) fail(ErrorKind::InvalidArgument, "unknown user: " + *g.share_with);
        if (d.visible_to(*g.share_with)) fail(ErrorKind::InvalidState, "drop is already visible to " + *g.share_with);
      }
      return commit(space, {event::Shared{d.id, g.share_with}});
  }
  fail(ErrorKind::InvalidArgument, "unknown gesture");
}

std::vector<DropView> snapshot_for(const Space& space, const UserId& user) {
  std::vector<DropView> out;
  for (const auto& [id, d] : space.drops) {
    if (is_terminal(d.state) || !d.visible_to(user)) continue;
    out.push_back({id, d.content_ref, d.scope, d.position, state_name(d.state)});
  }
  return out;
}

}  // namespace abi::infospace
