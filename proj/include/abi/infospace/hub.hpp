#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abi/infospace/space.hpp"

namespace abi::infospace {

/// Timed content standing in for the ambient search engine.
struct FeedItem {
  double t = 0.0;
  std::string content_ref;
  std::optional<UserId> owner;
  Scope scope = Scope::Public;
};

using ClientId = int;

struct Outgoing {
  ClientId to = 0;
  std::string line;
};

inline constexpr double kSyncRate = 20.0;  // Hz

/// Server side of the shared-space protocol. Owns the authoritative space
/// and its event log; clients talk to it in line-delimited JSON.
///
///   client: {"type":"hello","user":U[,"head":[x,y,z],"gaze":[x,y,z]]}
///           {"type":"gesture","kind":K,"drop":ID[,"pos":[x,y,z]][,"to":U|null]}
///           {"type":"pose","head":[x,y,z],"gaze":[x,y,z]}
///   server: {"type":"snapshot","t":T,"drops":[{"id","content","vis","pos","state"}...]}
///           {"type":"event","event":{...}}
///           {"type":"error","kind":K,"message":M}
///
/// Events about a drop are only sent to users who can see that drop.
/// Not thread-safe; callers serialize access.
class DropHub {
 public:
  DropHub(SpaceConfig config, std::vector<FeedItem> feed, std::uint64_t seed);

  ClientId attach();
  void detach(ClientId client);

  std::vector<Outgoing> handle(ClientId client, std::string_view line);

  /// Advances the world by dt, spawns due feed items, and sends every
  /// greeted client its snapshot.
  std::vector<Outgoing> advance(double dt);

  const Space& space() const { return space_; }
  const std::vector<Event>& log() const { return log_; }

 private:
  void record(const std::vector<Event>& events, std::vector<Outgoing>& out);

  Space space_;
  std::vector<Event> log_;
  std::vector<FeedItem> feed_;
  std::size_t feed_next_ = 0;
  std::uint64_t seed_;
  std::uint64_t spawn_count_ = 0;
  ClientId next_client_ = 1;
  std::map<ClientId, std::optional<UserId>> clients_;
};

std::string snapshot_line(const Space& space, const UserId& user);
std::string event_line(const Event& e);

}  // namespace abi::infospace
