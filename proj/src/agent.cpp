#include "hunt/agent.hpp"

#include <cassert>
#include <sstream>

namespace hunt {

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::kSearchNodeSet: return "search-node";
    case EventKind::kPossibility1: return "possibility-1";
    case EventKind::kPossibility2: return "possibility-2";
    case EventKind::kMarkerFound: return "marker-found";
    case EventKind::kMilestoneVerdict: return "milestone-verdict";
    case EventKind::kLightVerdict: return "light-verdict";
    case EventKind::kBranchRejected: return "branch-rejected";
  }
  return "?";
}

AgentView::AgentView(const InstanceSpec& inst, const PebblePlacement& placement)
    : graph_(&inst.graph),
      pebbled_(static_cast<std::size_t>(inst.graph.node_count()), false),
      pebble_counted_(static_cast<std::size_t>(inst.graph.node_count()), false),
      treasure_(inst.treasure),
      position_(inst.start) {
  for (int node : placement.pebbled) pebbled_[static_cast<std::size_t>(node)] = true;
  obs_ = observe(-1);
  if (obs_.pebble) {
    pebble_counted_[static_cast<std::size_t>(position_)] = true;
    pebbles_seen_ = 1;
  }
}

Observation AgentView::observe(int arrival) const {
  Observation o;
  o.degree = graph_->degree(position_);
  o.pebble = pebbled_[static_cast<std::size_t>(position_)];
  o.treasure = position_ == treasure_;
  o.arrival_port = arrival;
  return o;
}

const Observation& AgentView::traverse(int port) {
  if (port < 0 || port >= obs_.degree)
    throw HuntError("traverse: port " + std::to_string(port) + " out of range (degree " +
                    std::to_string(obs_.degree) + ")");
  const HalfEdge& e = graph_->at(position_, port);
  position_ = e.to;
  obs_ = observe(e.rev);
  TranscriptStep step;
  step.out_port = static_cast<std::uint16_t>(port);
  step.in_port = static_cast<std::uint16_t>(e.rev);
  step.degree = static_cast<std::uint16_t>(obs_.degree);
  step.flags = static_cast<std::uint8_t>((obs_.pebble ? 1 : 0) | (obs_.treasure ? 2 : 0));
  steps_.push_back(step);
  if (obs_.pebble && !pebble_counted_[static_cast<std::size_t>(position_)]) {
    pebble_counted_[static_cast<std::size_t>(position_)] = true;
    ++pebbles_seen_;
  }
  return obs_;
}

AgentView begin_hunt(const InstanceSpec& inst, const PebblePlacement& placement) {
  return AgentView(inst, placement);
}

Observation replay_ports(AgentView& view, const std::vector<int>& seq) {
  std::vector<int> back;
  back.reserve(seq.size());
  Observation obs = view.current();
  for (int p : seq) {
    obs = view.traverse(p);
    back.push_back(obs.arrival_port);
    if (obs.treasure) return obs;
  }
  Observation final_obs = obs;
  for (auto it = back.rbegin(); it != back.rend(); ++it) view.traverse(*it);
  return final_obs;
}

struct SearchEngine {
  AgentView& view;
  int radius;
  const std::set<int>& excluded;
  const StopFn& stop;
  const HitFn& on_hit;
  int root;

  struct Frame {
    int next_port = 0;  // next candidate to try at this node
    int arrival = -1;   // port back toward the previous walk node
  };
  std::vector<Frame> frames;
  std::vector<int> walk_out;
  std::vector<int> walk_in;
  std::vector<SearchRecord> records;
  bool completing = false;
  int effective_radius;

  SearchEngine(AgentView& v, int r, const std::set<int>& excl, const StopFn& s, const HitFn& h)
      : view(v), radius(r), excluded(excl), stop(s), on_hit(h), root(v.position_), effective_radius(r) {}

  bool at_root() const { return view.position_ == root; }

  bool skip_port(const Frame& f, int port) const {
    if (port == f.arrival) return true;
    if (at_root() && excluded.count(port)) return true;
    return false;
  }

  // Walk one step back; the frame of the abandoned node (if any) is the
  // caller's to pop.
  void retreat() {
    view.traverse(walk_in.back());
    walk_in.pop_back();
    walk_out.pop_back();
  }

  SearchOutcome run() {
    frames.push_back({0, -1});
    for (;;) {
      const int degree = view.current().degree;
      Frame& f = frames.back();
      int port = f.next_port;
      while (port < degree && skip_port(f, port)) ++port;
      if (port >= degree) {
        if (frames.size() == 1) {
          SearchOutcome out;
          out.kind = completing ? SearchOutcome::Kind::kCompleted : SearchOutcome::Kind::kExhausted;
          out.records = std::move(records);
          return out;
        }
        retreat();
        frames.pop_back();
        continue;
      }
      f.next_port = port + 1;
      const Observation obs = view.traverse(port);
      walk_out.push_back(port);
      walk_in.push_back(obs.arrival_port);
      if (obs.treasure) {
        SearchOutcome out;
        out.kind = SearchOutcome::Kind::kTreasure;
        return out;
      }
      if (stop && stop(obs)) {
        if (completing) {
          records.push_back({walk_out, obs.arrival_port});
        } else {
          HitDecision decision = on_hit ? on_hit(SearchHit{walk_out, obs}) : HitDecision::kAccept;
          if (view.at_treasure()) {  // the callback's probing may end the hunt
            SearchOutcome out;
            out.kind = SearchOutcome::Kind::kTreasure;
            return out;
          }
          if (decision == HitDecision::kAccept) {
            SearchOutcome out;
            out.kind = SearchOutcome::Kind::kAccepted;
            out.hit = SearchHit{walk_out, obs};
            return out;
          }
          if (decision == HitDecision::kRecordAndComplete) {
            records.push_back({walk_out, obs.arrival_port});
            completing = true;
            effective_radius = static_cast<int>(walk_out.size());
          }
        }
        retreat();  // a stop node is never walked through
        continue;
      }
      if (static_cast<int>(walk_out.size()) < effective_radius) {
        frames.push_back({0, obs.arrival_port});
      } else {
        retreat();
      }
    }
  }
};

SearchOutcome bounded_path_search(AgentView& view, int radius, const std::set<int>& excluded_root_ports,
                                  const StopFn& stop, const HitFn& on_hit) {
  if (radius < 1) throw HuntError("bounded_path_search: radius must be >= 1");
  SearchEngine engine(view, radius, excluded_root_ports, stop, on_hit);
  return engine.run();
}

std::string transcript_to_text(const std::vector<TranscriptStep>& steps) {
  std::ostringstream out;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const TranscriptStep& s = steps[t];
    out << (t + 1) << " move " << s.out_port << " -> deg=" << s.degree << " pebble=" << (s.pebble() ? 1 : 0)
        << " treasure=" << (s.treasure() ? 1 : 0) << " in=" << s.in_port << "\n";
  }
  return out.str();
}

}  // namespace hunt
