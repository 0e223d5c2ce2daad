#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace abi::infospace {

using UserId = std::string;
using DropId = std::uint64_t;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // height above ground

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

namespace state {
struct Falling {
  double speed = 0.0;  // m/s
  friend bool operator==(const Falling&, const Falling&) = default;
};
struct Held {
  UserId by;
  friend bool operator==(const Held&, const Held&) = default;
};
struct Pinned {
  friend bool operator==(const Pinned&, const Pinned&) = default;
};
struct Expanded {
  bool pinned = false;  // what Close returns to
  friend bool operator==(const Expanded&, const Expanded&) = default;
};
struct Discarded {
  friend bool operator==(const Discarded&, const Discarded&) = default;
};
struct Expired {
  friend bool operator==(const Expired&, const Expired&) = default;
};
}  // namespace state

using DropState =
    std::variant<state::Falling, state::Held, state::Pinned, state::Expanded, state::Discarded, state::Expired>;

const char* state_name(const DropState& s);
bool is_terminal(const DropState& s);

enum class Scope { Public, Private };

struct Drop {
  DropId id = 0;
  std::string content_ref;
  std::optional<UserId> owner;
  Scope scope = Scope::Public;
  std::set<UserId> shared_with;  // private drops only
  Vec3 position;
  DropState state;
  double spawned_at = 0.0;

  bool visible_to(const UserId& user) const;
  friend bool operator==(const Drop&, const Drop&) = default;
};

struct User {
  Vec3 head;
  Vec3 gaze{0.0, 1.0, 0.0};

  friend bool operator==(const User&, const User&) = default;
};

struct SpaceConfig {
  double ground_height = 0.0;
  double cloud_height = 2.2;
  double fall_speed = 0.05;           // m/s
  double clearance = 0.5;             // m from every head-to-head segment
  double peripheral_angle_deg = 25.0; // min bearing off every gaze
  double spawn_radius = 1.5;          // m around the owner's head
  double spawn_min_radius = 0.3;
  int max_spawn_attempts = 1000;

  void validate() const;
  friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

/// Authoritative world state. Only apply_event mutates it, so the event log
/// is a complete description of its history.
struct Space {
  SpaceConfig config;
  double now = 0.0;
  std::map<DropId, Drop> drops;
  std::map<UserId, User> users;
  DropId next_id = 1;

  friend bool operator==(const Space&, const Space&) = default;
};

namespace event {
struct UserJoined {
  UserId user;
  User pose;
};
struct PoseUpdated {
  UserId user;
  User pose;
};
struct Spawned {
  Drop drop;
};
struct Advanced {
  double dt = 0.0;
};
struct Expired {
  DropId drop = 0;
};
struct Grabbed {
  DropId drop = 0;
  UserId by;
};
struct Moved {
  DropId drop = 0;
  Vec3 to;
};
struct Pinned {
  DropId drop = 0;
};
struct Discarded {
  DropId drop = 0;
};
struct Expanded {
  DropId drop = 0;
};
struct Closed {
  DropId drop = 0;
};
struct Shared {
  DropId drop = 0;
  std::optional<UserId> with;  // nullopt: made public
};
}  // namespace event

using Event = std::variant<event::UserJoined, event::PoseUpdated, event::Spawned, event::Advanced, event::Expired,
                           event::Grabbed, event::Moved, event::Pinned, event::Discarded, event::Expanded,
                           event::Closed, event::Shared>;

/// Folds one event into the space. Events are trusted: they come from the
/// validating operations below or from a log those produced.
void apply_event(Space& space, const Event& e);

/// Rebuilds a space from an initial configuration and an event log.
Space replay(const SpaceConfig& config, const std::vector<Event>& log);

// The operations below validate first and then fold their events, so on
// error the space is left untouched.

std::vector<Event> join(Space& space, const UserId& user, const User& pose);
std::vector<Event> update_pose(Space& space, const UserId& user, const User& pose);

/// Places a new falling drop in the cloud, away from the sight lines
/// between users and outside every user's central view. Throws
/// placement-failure when no position is found.
std::vector<Event> spawn(Space& space, const std::string& content_ref, const std::optional<UserId>& owner,
                         Scope scope, std::uint64_t seed);

/// Advances time; falling drops that reach the ground expire.
std::vector<Event> tick(Space& space, double dt);

enum class GestureKind { Grab, Move, Release, Throw, Show, Close, Share };
const char* to_string(GestureKind kind);
std::optional<GestureKind> gesture_from_string(std::string_view name);

struct Gesture {
  GestureKind kind = GestureKind::Grab;
  DropId drop = 0;
  Vec3 position;                     // Move
  std::optional<UserId> share_with;  // Share; nullopt makes the drop public
};

std::vector<Event> apply_gesture(Space& space, const UserId& actor, const Gesture& gesture);

struct DropView {
  DropId id = 0;
  std::string content_ref;
  Scope scope = Scope::Public;
  Vec3 position;
  std::string state;

  friend bool operator==(const DropView&, const DropView&) = default;
};

/// Live drops the user may see: public ones plus private ones owned by or
/// shared with the user.
std::vector<DropView> snapshot_for(const Space& space, const UserId& user);

/// Drop an event refers to, if any.
std::optional<DropId> event_drop(const Event& e);

}  // namespace abi::infospace
