#include "abi/infospace/hub.hpp"

#include <algorithm>

#include <json.hpp>

#include "abi/common/error.hpp"
#include "abi/common/random.hpp"

namespace abi::infospace {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 parse_vec(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) fail(ErrorKind::InvalidArgument, std::string(what) + " must be [x,y,z]");
  for (const auto& c : j) {
    if (!c.is_number()) fail(ErrorKind::InvalidArgument, std::string(what) + " must be numeric");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

const char* scope_name(Scope s) { return s == Scope::Public ? "public" : "private"; }

json event_json(const Event& e) {
  return std::visit(
      overloaded{
          [](const event::UserJoined& ev) {
            return json{{"kind", "user_joined"}, {"user", ev.user}, {"head", vec(ev.pose.head)}};
          },
          [](const event::PoseUpdated& ev) {
            return json{{"kind", "pose"}, {"user", ev.user}, {"head", vec(ev.pose.head)}, {"gaze", vec(ev.pose.gaze)}};
          },
          [](const event::Spawned& ev) {
            return json{{"kind", "spawned"},
                        {"drop", ev.drop.id},
                        {"content", ev.drop.content_ref},
                        {"vis", scope_name(ev.drop.scope)},
                        {"pos", vec(ev.drop.position)}};
          },
          [](const event::Advanced& ev) { return json{{"kind", "advanced"}, {"dt", ev.dt}}; },
          [](const event::Expired& ev) { return json{{"kind", "expired"}, {"drop", ev.drop}}; },
          [](const event::Grabbed& ev) { return json{{"kind", "grabbed"}, {"drop", ev.drop}, {"by", ev.by}}; },
          [](const event::Moved& ev) { return json{{"kind", "moved"}, {"drop", ev.drop}, {"pos", vec(ev.to)}}; },
          [](const event::Pinned& ev) { return json{{"kind", "pinned"}, {"drop", ev.drop}}; },
          [](const event::Discarded& ev) { return json{{"kind", "discarded"}, {"drop", ev.drop}}; },
          [](const event::Expanded& ev) { return json{{"kind", "expanded"}, {"drop", ev.drop}}; },
          [](const event::Closed& ev) { return json{{"kind", "closed"}, {"drop", ev.drop}}; },
          [](const event::Shared& ev) {
            json j{{"kind", "shared"}, {"drop", ev.drop}};
            j["with"] = ev.with ? json(*ev.with) : json(nullptr);
            return j;
          },
      },
      e);
}

std::string error_line(ErrorKind kind, const std::string& message) {
  return json{{"type", "error"}, {"kind", std::string(to_string(kind))}, {"message", message}}.dump();
}

}  // namespace

std::string event_line(const Event& e) { return json{{"type", "event"}, {"event", event_json(e)}}.dump(); }

std::string snapshot_line(const Space& space, const UserId& user) {
  json drops = json::array();
  for (const auto& v : snapshot_for(space, user)) {
    drops.push_back(
        {{"id", v.id}, {"content", v.content_ref}, {"vis", scope_name(v.scope)}, {"pos", vec(v.position)}, {"state", v.state}});
  }
  return json{{"type", "snapshot"}, {"t", space.now}, {"drops", std::move(drops)}}.dump();
}

DropHub::DropHub(SpaceConfig config, std::vector<FeedItem> feed, std::uint64_t seed)
    : feed_(std::move(feed)), seed_(seed) {
  config.validate();
  space_.config = config;
  std::stable_sort(feed_.begin(), feed_.end(), [](const FeedItem& a, const FeedItem& b) { return a.t < b.t; });
}

ClientId DropHub::attach() {
  const ClientId id = next_client_++;
  clients_[id] = std::nullopt;
  return id;
}

void DropHub::detach(ClientId client) { clients_.erase(client); }

void DropHub::record(const std::vector<Event>& events, std::vector<Outgoing>& out) {
  for (const auto& e : events) {
    log_.push_back(e);
    if (std::holds_alternative<event::Advanced>(e)) continue;
    const auto drop = event_drop(e);
    const std::string line = event_line(e);
    for (const auto& [client, user] : clients_) {
      if (!user) continue;
      if (drop && !space_.drops.at(*drop).visible_to(*user)) continue;
      out.push_back({client, line});
    }
  }
}

std::vector<Outgoing> DropHub::handle(ClientId client, std::string_view line) {
  std::vector<Outgoing> out;
  const auto it = clients_.find(client);
  if (it == clients_.end()) fail(ErrorKind::InvalidArgument, "unknown client");
  try {
    const json msg = json::parse(line);
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
      fail(ErrorKind::InvalidArgument, "message needs a string \"type\"");
    }
    const std::string type = msg["type"];
    if (type == "hello") {
      if (it->second) fail(ErrorKind::InvalidState, "already greeted");
      if (!msg.contains("user") || !msg["user"].is_string()) fail(ErrorKind::InvalidArgument, "hello needs a user");
      const UserId user = msg["user"];
      User pose;
      if (msg.contains("head")) pose.head = parse_vec(msg["head"], "head");
      if (msg.contains("gaze")) pose.gaze = parse_vec(msg["gaze"], "gaze");
      std::vector<Event> events;
      if (!space_.users.contains(user)) {
        events = join(space_, user, pose);
      } else {
        events = update_pose(space_, user, pose);
      }
      it->second = user;
      record(events, out);
      out.push_back({client, snapshot_line(space_, user)});
    } else {
      if (!it->second) fail(ErrorKind::InvalidState, "say hello first");
      const UserId& user = *it->second;
      if (type == "pose") {
        User pose{parse_vec(msg.at("head"), "head"), parse_vec(msg.at("gaze"), "gaze")};
        record(update_pose(space_, user, pose), out);
      } else if (type == "gesture") {
        if (!msg.contains("kind") || !msg["kind"].is_string()) fail(ErrorKind::InvalidArgument, "gesture needs a kind");
        const auto kind = gesture_from_string(msg["kind"].get<std::string>());
        if (!kind) fail(ErrorKind::InvalidArgument, "unknown gesture kind");
        if (!msg.contains("drop") || !msg["drop"].is_number_unsigned()) {
          fail(ErrorKind::InvalidArgument, "gesture needs a drop id");
        }
        Gesture g{*kind, msg["drop"].get<DropId>(), {}, std::nullopt};
        if (*kind == GestureKind::Move) g.position = parse_vec(msg.at("pos"), "pos");
        if (*kind == GestureKind::Share && msg.contains("to") && !msg["to"].is_null()) {
          if (!msg["to"].is_string()) fail(ErrorKind::InvalidArgument, "share target must be a user id or null");
          g.share_with = msg["to"].get<std::string>();
        }
        record(apply_gesture(space_, user, g), out);
      } else {
        fail(ErrorKind::InvalidArgument, "unknown message type: " + type);
      }
    }
  } catch (const Error& e) {
    out.push_back({client, error_line(e.kind(), e.what())});
  } catch (const json::exception& e) {
    out.push_back({client, error_line(ErrorKind::InvalidArgument, e.what())});
  }
  return out;
}

std::vector<Outgoing> DropHub::advance(double dt) {
  std::vector<Outgoing> out;
  record(tick(space_, dt), out);
  while (feed_next_ < feed_.size() && feed_[feed_next_].t <= space_.now) {
    const FeedItem& item = feed_[feed_next_++];
    if (space_.users.empty()) continue;
    if (item.owner && !space_.users.contains(*item.owner)) continue;
    try {
      record(spawn(space_, item.content_ref, item.owner, item.scope, derive_seed(seed_, spawn_count_++)), out);
    } catch (const Error&) {
      // placement can fail for crowded layouts; the item is dropped
    }
  }
  for (const auto& [client, user] : clients_) {
    if (user) out.push_back({client, snapshot_line(space_, *user)});
  }
  return out;
}

}  // namespace abi::infospace
