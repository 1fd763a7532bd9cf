#include "tt/track.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace tt {

namespace {

int halfedge_id(const EndRef& e) { return 2 * e.branch + e.end; }

}  // namespace

int BoundaryData::total_cusps() const {
  int n = 0;
  for (auto& c : cycles) n += c.cusps();
  return n;
}

std::string ValidityReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

bool is_matched(const TrainTrack& t, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int B = t.num_branches();
  const int V = t.num_switches();
  std::vector<int> seen(2 * B, 0);
  for (int s = 0; s < V; ++s) {
    for (int k = 0; k < 3; ++k) {
      const EndRef& e = t.switches[s].ends[k];
      if (e.branch < 0 || e.branch >= B || (e.end != 0 && e.end != 1))
        return fail("switch s" + std::to_string(s) + " slot " +
                    slot_name(static_cast<Slot>(k)) + " references no branch end");
      seen[halfedge_id(e)]++;
      const SlotRef& back = t.branches[e.branch].ends[e.end];
      if (back.sw != s || back.slot != static_cast<Slot>(k))
        return fail("unmatched slot: s" + std::to_string(s) + "/" +
                    slot_name(static_cast<Slot>(k)) + " vs branch b" +
                    std::to_string(e.branch) + " end " + std::to_string(e.end));
    }
  }
  for (int b = 0; b < B; ++b)
    for (int e = 0; e < 2; ++e)
      if (seen[2 * b + e] != 1)
        return fail("branch b" + std::to_string(b) + " end " + std::to_string(e) +
                    " matched " + std::to_string(seen[2 * b + e]) + " times");
  if (!t.chart.empty() && static_cast<int>(t.chart.size()) != B)
    return fail("chart size does not match branch count");
  return true;
}

void require_matched(const TrainTrack& t) {
  std::string why;
  if (!is_matched(t, &why)) throw std::invalid_argument("malformed track: " + why);
}

BoundaryData boundary_walk(const TrainTrack& t) {
  require_matched(t);
  const int B = t.num_branches();
  // Arrival half-branch (b, e): traverse b toward end e, walker on the right
  // of the travel direction, fattened track on the left.  At the switch the
  // walk departs along the slot counterclockwise-next from the arrival slot;
  // the small_left -> small_right transition passes the cusp.
  std::vector<char> visited(2 * B, 0);
  std::vector<BoundaryCycle> cycles;
  std::vector<std::vector<int>> region(B, std::vector<int>(2, -1));

  for (int start = 0; start < 2 * B; ++start) {
    if (visited[start]) continue;
    BoundaryCycle cyc;
    int h = start;
    do {
      visited[h] = 1;
      EndRef arr{h / 2, h % 2};
      cyc.arrivals.push_back(arr);
      const SlotRef at = t.branches[arr.branch].ends[arr.end];
      if (at.slot == Slot::small_left) cyc.cusp_switches.push_back(at.sw);
      const EndRef depart = t.switches[at.sw].at(ccw_next(at.slot));
      // Leave the switch along `depart`, arriving at the branch's other end.
      h = 2 * depart.branch + (1 - depart.end);
    } while (h != start);
    cycles.push_back(std::move(cyc));
  }

  // Canonical order: by the minimal half-edge id on the cycle.
  std::vector<int> order(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) order[i] = static_cast<int>(i);
  auto min_he = [&](const BoundaryCycle& c) {
    int m = 1 << 30;
    for (auto& a : c.arrivals) m = std::min(m, halfedge_id(a));
    return m;
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return min_he(cycles[a]) < min_he(cycles[b]); });
  BoundaryData out;
  out.region_of_side.assign(B, std::vector<int>(2, -1));
  for (int idx : order) {
    // Rotate each cycle to start at its minimal half-edge for determinism.
    BoundaryCycle& c = cycles[idx];
    int m = min_he(c);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < c.arrivals.size(); ++i)
      if (halfedge_id(c.arrivals[i]) == m) pos = i;
    std::rotate(c.arrivals.begin(), c.arrivals.begin() + pos, c.arrivals.end());
    // Recompute cusp order along the rotated walk.
    c.cusp_switches.clear();
    for (auto& a : c.arrivals) {
      const SlotRef at = t.branches[a.branch].ends[a.end];
      if (at.slot == Slot::small_left) c.cusp_switches.push_back(at.sw);
    }
    int rid = static_cast<int>(out.cycles.size());
    for (auto& a : c.arrivals) out.region_of_side[a.branch][a.end] = rid;
    out.cycles.push_back(std::move(c));
  }
  return out;
}

BranchClass classify_branch(const TrainTrack& t, int branch) {
  if (branch < 0 || branch >= t.num_branches())
    throw std::invalid_argument("unknown branch b" + std::to_string(branch));
  int larges = 0;
  for (int e = 0; e < 2; ++e)
    if (t.branches[branch].ends[e].slot == Slot::large) larges++;
  if (larges == 2) return BranchClass::large;
  if (larges == 0) return BranchClass::small;
  return BranchClass::mixed;
}

bool is_connected(const TrainTrack& t) {
  const int V = t.num_switches();
  if (V == 0) return t.num_branches() == 0;
  std::vector<char> seen(V, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      const EndRef& e = t.switches[s].ends[k];
      const SlotRef& other = t.branches[e.branch].ends[1 - e.end];
      if (other.sw >= 0 && !seen[other.sw]) {
        seen[other.sw] = 1;
        cnt++;
        q.push(other.sw);
      }
    }
  }
  return cnt == V;
}

ValidityReport validate(const TrainTrack& t) {
  ValidityReport rep;
  std::string why;
  if (!is_matched(t, &why)) {
    rep.violations.push_back(why);
    return rep;
  }
  const int V = t.num_switches();
  const int B = t.num_branches();
  if (V == 0 || B == 0) {
    rep.violations.push_back("empty track");
    return rep;
  }
  if (3 * V != 2 * B)
    rep.violations.push_back("switch/branch count violates trivalence: 3V != 2B");
  if (!is_connected(t)) rep.violations.push_back("track is disconnected");

  BoundaryData bd = boundary_walk(t);
  const int F = static_cast<int>(bd.cycles.size());
  if (bd.total_cusps() != V)
    rep.violations.push_back("cusp census mismatch: " + std::to_string(bd.total_cusps()) +
                             " cusps for " + std::to_string(V) + " switches");

  for (int r : t.punctured_regions)
    if (r < 0 || r >= F)
      rep.violations.push_back("punctured region r" + std::to_string(r) +
                               " does not name a boundary cycle");

  for (int r = 0; r < F; ++r) {
    int k = bd.cycles[r].cusps();
    bool punct = t.punctured_regions.count(r) > 0;
    if (k == 0) {
      rep.violations.push_back("cornerless boundary component r" + std::to_string(r));
      continue;
    }
    // Disk region: index 1 - k/2; once-punctured disk: index -k/2.
    if (!punct && k < 3) {
      std::ostringstream os;
      os << "region r" << r << " has index 1 - " << k << "/2 = " << (2 - k) << "/2 not negative";
      rep.violations.push_back(os.str());
    }
  }

  // Signature consistency: chi(S) = (V - B) + sum over regions of chi.
  if (3 * V == 2 * B) {
    const int n = static_cast<int>(t.punctured_regions.size());
    const int chi = (V - B) + (F - n);  // disk chi 1, punctured disk chi 0
    const int closed_chi = chi + n;     // cap the punctures
    if ((closed_chi % 2) != 0 || closed_chi > 2) {
      rep.violations.push_back("inconsistent signature: closed Euler characteristic " +
                               std::to_string(closed_chi));
    } else {
      int g = (2 - closed_chi) / 2;
      if (g < 0) rep.violations.push_back("inconsistent signature: negative genus");
      if (t.surface) {
        Signature want = *t.surface == SurfaceTag::S11 ? Signature{1, 1} : Signature{0, 4};
        if (Signature{g, n} != want)
          rep.violations.push_back("surface tag disagrees with derived signature (g,n)=(" +
                                   std::to_string(g) + "," + std::to_string(n) + ")");
      }
    }
  }
  return rep;
}

Signature signature(const TrainTrack& t) {
  BoundaryData bd = boundary_walk(t);
  const int F = static_cast<int>(bd.cycles.size());
  const int n = static_cast<int>(t.punctured_regions.size());
  const int chi = (t.num_switches() - t.num_branches()) + (F - n);
  const int closed_chi = chi + n;
  Signature s;
  s.punctures = n;
  s.genus = (2 - closed_chi) / 2;
  return s;
}

std::string canonical_key(const TrainTrack& t) {
  require_matched(t);
  const int V = t.num_switches();
  const int B = t.num_branches();
  std::string best;
  for (int start = 0; start < V; ++start) {
    // Deterministic BFS relabeling: switches by discovery, branches oriented by
    // first traversal (the discovered end becomes end 0').
    std::vector<int> sw_new(V, -1), br_new(B, -1);
    std::vector<int> br_flip(B, 0);
    std::vector<int> bfs;
    int next_sw = 0, next_br = 0;
    sw_new[start] = next_sw++;
    bfs.push_back(start);
    for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
      int s = bfs[qi];
      for (int k = 0; k < 3; ++k) {
        const EndRef& e = t.switches[s].ends[k];
        if (br_new[e.branch] == -1) {
          br_new[e.branch] = next_br++;
          br_flip[e.branch] = e.end;  // encountered end becomes 0'
        }
        const SlotRef& other = t.branches[e.branch].ends[1 - e.end];
        if (sw_new[other.sw] == -1) {
          sw_new[other.sw] = next_sw++;
          bfs.push_back(other.sw);
        }
      }
    }
    if (next_sw != V) {
      // Disconnected: canonical key falls back to a stable full encoding.
      break;
    }
    // Encode: for each new switch id, its three slots as (branch', end').
    std::vector<int> inv_sw(V);
    for (int s = 0; s < V; ++s) inv_sw[sw_new[s]] = s;
    std::ostringstream os;
    for (int ns = 0; ns < V; ++ns) {
      int s = inv_sw[ns];
      for (int k = 0; k < 3; ++k) {
        const EndRef& e = t.switches[s].ends[k];
        int ne = e.end ^ br_flip[e.branch];
        os << br_new[e.branch] << '.' << ne << '|';
      }
      os << '/';
    }
    // Punctures: recompute regions under the relabeling-independent walk, then
    // name each region by its minimal relabeled (branch', end'') token.
    BoundaryData bd = boundary_walk(t);
    std::vector<std::pair<int, int>> region_tokens;  // (token, old region id)
    for (std::size_t r = 0; r < bd.cycles.size(); ++r) {
      int m = 1 << 30;
      for (auto& a : bd.cycles[r].arrivals) {
        int ne = a.end ^ br_flip[a.branch];
        m = std::min(m, 2 * br_new[a.branch] + ne);
      }
      region_tokens.push_back({m, static_cast<int>(r)});
    }
    std::sort(region_tokens.begin(), region_tokens.end());
    os << "p:";
    for (std::size_t i = 0; i < region_tokens.size(); ++i)
      if (t.punctured_regions.count(region_tokens[i].second)) os << i << ',';
    std::string key = os.str();
    if (best.empty() || key < best) best = key;
  }
  if (best.empty()) {
    // Disconnected fallback: raw encoding (stable, if not canonical).
    std::ostringstream os;
    for (auto& s : t.switches)
      for (auto& e : s.ends) os << e.branch << '.' << e.end << '|';
    os << "p:";
    for (int r : t.punctured_regions) os << r << ',';
    best = os.str();
  }
  return best;
}

ChartElem chart_of_path(const TrainTrack& t, const std::vector<Step>& path) {
  if (!t.has_chart()) throw std::invalid_argument("track carries no chart");
  ChartElem g = chart_identity();
  for (const Step& st : path) {
    const ChartElem& e = t.chart.at(st.branch);
    g = chart_compose(g, st.forward ? e : chart_inverse(e));
  }
  return g;
}

// ---------------------------------------------------------------------------
// JSON round-trip

using nlohmann::json;

std::string to_json(const TrainTrack& t, bool pretty) {
  json j;
  auto slot_ref = [](const EndRef& e) {
    return json::array({"b" + std::to_string(e.branch), e.end});
  };
  j["switches"] = json::array();
  for (int s = 0; s < t.num_switches(); ++s) {
    json js;
    js["id"] = "s" + std::to_string(s);
    js["large"] = slot_ref(t.switches[s].at(Slot::large));
    js["small_left"] = slot_ref(t.switches[s].at(Slot::small_left));
    js["small_right"] = slot_ref(t.switches[s].at(Slot::small_right));
    j["switches"].push_back(js);
  }
  j["branches"] = json::array();
  for (int b = 0; b < t.num_branches(); ++b) {
    json jb;
    jb["id"] = "b" + std::to_string(b);
    json ends = json::array();
    for (int e = 0; e < 2; ++e) {
      const SlotRef& sr = t.branches[b].ends[e];
      ends.push_back(json::array({"s" + std::to_string(sr.sw), slot_name(sr.slot)}));
    }
    jb["ends"] = ends;
    j["branches"].push_back(jb);
  }
  j["punctured_regions"] = json::array();
  for (int r : t.punctured_regions) j["punctured_regions"].push_back("r" + std::to_string(r));
  if (t.surface) j["surface"] = surface_name(*t.surface);
  if (t.has_chart()) {
    json jc = json::object();
    for (int b = 0; b < t.num_branches(); ++b) {
      const ChartElem& c = t.chart[b];
      jc["b" + std::to_string(b)] =
          json{{"dx", c.dx.str()}, {"dy", c.dy.str()}, {"flip", c.flip}};
    }
    j["chart"] = jc;
  }
  return pretty ? j.dump(2) + "\n" : j.dump();
}

namespace {

int parse_id(const std::string& s, char prefix, const char* what) {
  if (s.size() < 2 || s[0] != prefix)
    throw std::invalid_argument(std::string("bad ") + what + " id: " + s);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument(std::string("bad ") + what + " id: " + s);
  return std::stoi(s.substr(1));
}

Slot parse_slot(const std::string& s) {
  if (s == "large") return Slot::large;
  if (s == "small_left") return Slot::small_left;
  if (s == "small_right") return Slot::small_right;
  throw std::invalid_argument("bad slot name: " + s);
}

}  // namespace

TrainTrack track_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
  TrainTrack t;
  const auto& sws = j.at("switches");
  const auto& brs = j.at("branches");
  t.switches.resize(sws.size());
  t.branches.resize(brs.size());
  // Branch ids must be b0..b{n-1}; switch ids s0..s{m-1}.
  for (const auto& jb : brs) {
    int b = parse_id(jb.at("id").get<std::string>(), 'b', "branch");
    if (b < 0 || b >= static_cast<int>(t.branches.size()))
      throw std::invalid_argument("branch id out of range");
    if (jb.contains("ends")) {
      for (int e = 0; e < 2; ++e) {
        const auto& je = jb.at("ends").at(e);
        t.branches[b].ends[e].sw = parse_id(je.at(0).get<std::string>(), 's', "switch");
        t.branches[b].ends[e].slot = parse_slot(je.at(1).get<std::string>());
      }
    }
  }
  for (const auto& js : sws) {
    int s = parse_id(js.at("id").get<std::string>(), 's', "switch");
    if (s < 0 || s >= static_cast<int>(t.switches.size()))
      throw std::invalid_argument("switch id out of range");
    const char* names[3] = {"large", "small_left", "small_right"};
    for (int k = 0; k < 3; ++k) {
      const auto& je = js.at(names[k]);
      EndRef e;
      e.branch = parse_id(je.at(0).get<std::string>(), 'b', "branch");
      e.end = je.at(1).get<int>();
      if (e.end != 0 && e.end != 1) throw std::invalid_argument("branch end must be 0 or 1");
      t.switches[s].ends[k] = e;
      if (e.branch >= 0 && e.branch < static_cast<int>(t.branches.size())) {
        SlotRef& back = t.branches[e.branch].ends[e.end];
        SlotRef want{s, static_cast<Slot>(k)};
        if (back.sw != -1 && !(back == want))
          throw std::invalid_argument("switch and branch incidence disagree");
        back = want;
      }
    }
  }
  if (j.contains("punctured_regions"))
    for (const auto& jr : j.at("punctured_regions"))
      t.punctured_regions.insert(parse_id(jr.get<std::string>(), 'r', "region"));
  if (j.contains("surface")) {
    std::string s = j.at("surface").get<std::string>();
    if (s == "S11")
      t.surface = SurfaceTag::S11;
    else if (s == "S04")
      t.surface = SurfaceTag::S04;
    else
      throw std::invalid_argument("unknown surface tag: " + s);
  }
  if (j.contains("chart")) {
    t.chart.assign(t.branches.size(), ChartElem{});
    for (auto it = j.at("chart").begin(); it != j.at("chart").end(); ++it) {
      int b = parse_id(it.key(), 'b', "branch");
      const auto& jc = it.value();
      ChartElem c;
      auto dx = parse_int(jc.at("dx").get<std::string>());
      auto dy = parse_int(jc.at("dy").get<std::string>());
      if (!dx || !dy) throw std::invalid_argument("bad chart integer");
      c.dx = *dx;
      c.dy = *dy;
      c.flip = jc.at("flip").get<bool>();
      t.chart.at(b) = c;
    }
  }
  return t;
}

}  // namespace tt
