#include "tt/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tt {

std::optional<MoveKind> move_kind_from_name(const std::string& s) {
  if (s == "split_left") return MoveKind::split_left;
  if (s == "split_central") return MoveKind::split_central;
  if (s == "split_right") return MoveKind::split_right;
  if (s == "slide") return MoveKind::slide;
  return std::nullopt;
}

namespace {

using EndToken = std::pair<int, int>;  // (branch, end)

EndToken tok(const EndRef& e) { return {e.branch, e.end}; }

std::vector<Step> reversed(const std::vector<Step>& p) {
  std::vector<Step> r(p.rbegin(), p.rend());
  for (Step& s : r) s.forward = !s.forward;
  return r;
}

CarryingMap matrix_from_paths(int parent_branches, const std::vector<std::vector<Step>>& paths) {
  CarryingMap m;
  m.parent_branches = parent_branches;
  m.child_branches = static_cast<int>(paths.size());
  m.m.assign(parent_branches, std::vector<Int>(paths.size(), 0));
  for (std::size_t c = 0; c < paths.size(); ++c)
    for (const Step& s : paths[c]) m.m[s.branch][c] += 1;
  return m;
}

void transport_chart(const TrainTrack& parent, TrainTrack& child,
                     const std::vector<std::vector<Step>>& paths) {
  if (!parent.has_chart()) return;
  child.surface = parent.surface;
  child.chart.resize(child.branches.size());
  for (std::size_t c = 0; c < paths.size(); ++c)
    child.chart[c] = chart_of_path(parent, paths[c]);
}

// Transfer puncture declarations from parent regions to child regions via the
// surviving branch sides.  `core` maps a child branch to its stable parent
// pieces (parent branch, reversed flag); branches with no stable piece are
// skipped.  Throws when a child region would collect two punctures.
void transfer_punctures(const TrainTrack& parent, TrainTrack& child,
                        const std::vector<std::vector<std::pair<int, bool>>>& core) {
  BoundaryData pbd = boundary_walk(parent);
  BoundaryData cbd = boundary_walk(child);
  const int CF = static_cast<int>(cbd.cycles.size());
  std::vector<std::set<int>> votes(CF);
  for (int cb = 0; cb < child.num_branches(); ++cb) {
    for (auto [pb, rev] : core[cb]) {
      for (int side = 0; side < 2; ++side) {
        int creg = cbd.region_of_side[cb][side];
        int preg = pbd.region_of_side[pb][rev ? 1 - side : side];
        if (creg >= 0 && preg >= 0) votes[creg].insert(preg);
      }
    }
  }
  child.punctured_regions.clear();
  std::set<int> seen_punctured;
  for (int creg = 0; creg < CF; ++creg) {
    int punct = 0;
    for (int preg : votes[creg])
      if (parent.punctured_regions.count(preg)) {
        punct++;
        seen_punctured.insert(preg);
      }
    if (punct >= 2)
      throw std::invalid_argument("move merges two punctured regions into one");
    if (punct == 1) child.punctured_regions.insert(creg);
  }
  for (int preg : parent.punctured_regions)
    if (!seen_punctured.count(preg))
      throw std::invalid_argument("move loses track of a punctured region");
}

void set_slot(TrainTrack& t, int sw, Slot slot, const EndRef& e) {
  t.switches[sw].at(slot) = e;
  t.branches[e.branch].ends[e.end] = SlotRef{sw, slot};
}

MoveResult finish(const TrainTrack& parent, TrainTrack child,
                  std::vector<std::vector<Step>> paths,
                  const std::vector<std::vector<std::pair<int, bool>>>& core, MoveKind kind,
                  int branch) {
  transfer_punctures(parent, child, core);
  transport_chart(parent, child, paths);
  ValidityReport rep = validate(child);
  if (!rep.ok())
    throw std::invalid_argument(std::string(move_kind_name(kind)) +
                                " kills the track: " + rep.summary());
  MoveResult r;
  r.record.kind = kind;
  r.record.branch = branch;
  r.record.carrying = matrix_from_paths(parent.num_branches(), paths);
  r.track = std::move(child);
  r.child_paths = std::move(paths);
  return r;
}

MoveResult split_side(const TrainTrack& t, int e, SplitDir dir) {
  const int v = t.branches[e].ends[0].sw;
  const int w = t.branches[e].ends[1].sw;
  const EndRef p = t.switches[v].at(Slot::small_left);
  const EndRef q = t.switches[v].at(Slot::small_right);
  const EndRef r = t.switches[w].at(Slot::small_left);
  const EndRef s = t.switches[w].at(Slot::small_right);

  TrainTrack child = t;
  child.chart.clear();
  child.punctured_regions.clear();
  // The diagonal reuses the split branch's id.
  std::map<EndToken, std::vector<Step>> ext;
  if (dir == SplitDir::right) {
    set_slot(child, v, Slot::large, q);
    set_slot(child, v, Slot::small_left, r);
    set_slot(child, v, Slot::small_right, EndRef{e, 0});
    set_slot(child, w, Slot::large, s);
    set_slot(child, w, Slot::small_left, p);
    set_slot(child, w, Slot::small_right, EndRef{e, 1});
    ext[tok(p)] = {Step{e, true}};
    ext[tok(r)] = {Step{e, false}};
  } else {
    set_slot(child, v, Slot::large, p);
    set_slot(child, v, Slot::small_left, EndRef{e, 0});
    set_slot(child, v, Slot::small_right, s);
    set_slot(child, w, Slot::large, r);
    set_slot(child, w, Slot::small_left, EndRef{e, 1});
    set_slot(child, w, Slot::small_right, q);
    ext[tok(s)] = {Step{e, false}};
    ext[tok(q)] = {Step{e, true}};
  }

  std::vector<std::vector<Step>> paths(child.num_branches());
  std::vector<std::vector<std::pair<int, bool>>> core(child.num_branches());
  for (int b = 0; b < child.num_branches(); ++b) {
    if (b == e) {
      paths[b] = {Step{e, true}};  // the diagonal crosses the old rectangle once
      continue;
    }
    std::vector<Step> path;
    auto it0 = ext.find({b, 0});
    if (it0 != ext.end()) path = reversed(it0->second);
    path.push_back(Step{b, true});
    auto it1 = ext.find({b, 1});
    if (it1 != ext.end())
      for (const Step& st : it1->second) path.push_back(st);
    paths[b] = std::move(path);
    core[b] = {{b, false}};
  }
  return finish(t, std::move(child), std::move(paths), core, split_kind(dir), e);
}

MoveResult split_central(const TrainTrack& t, int e) {
  const int v = t.branches[e].ends[0].sw;
  const int w = t.branches[e].ends[1].sw;
  const EndRef p = t.switches[v].at(Slot::small_left);
  const EndRef q = t.switches[v].at(Slot::small_right);
  const EndRef r = t.switches[w].at(Slot::small_left);
  const EndRef s = t.switches[w].at(Slot::small_right);

  // Joined pairs: the north strand p~s and the south strand q~r; the connector
  // crosses the removed rectangle from v to w.
  std::map<EndToken, std::pair<EndToken, bool>> join;  // end -> (partner, forward over e)
  join[tok(p)] = {tok(s), true};
  join[tok(s)] = {tok(p), false};
  join[tok(q)] = {tok(r), true};
  join[tok(r)] = {tok(q), false};

  // Assemble chains over parent branches (e removed).
  const int B = t.num_branches();
  std::vector<int> child_id(B, -1);
  std::vector<char> used(B, 0);
  used[e] = 1;

  struct Chain {
    std::vector<Step> path;                         // over parent branches
    std::vector<std::pair<int, bool>> pieces;       // (parent branch, reversed)
    EndToken a, z;                                  // free ends
  };
  std::vector<Chain> chains;
  for (int b0 = 0; b0 < B; ++b0) {
    if (used[b0]) continue;
    // Find a free end on this piece's chain.
    EndToken start{-1, -1};
    for (int end = 0; end < 2; ++end)
      if (!join.count({b0, end})) start = {b0, end};
    if (start.first < 0) continue;  // both ends joined; may be part of a loop
    // Only start a chain from the free end once: walk it fully.
    Chain ch;
    ch.a = start;
    EndToken at = start;
    while (true) {
      int b = at.first;
      if (used[b]) throw std::invalid_argument("central split chain revisits a branch");
      used[b] = 1;
      bool fwd = (at.second == 0);
      ch.path.push_back(Step{b, fwd});
      ch.pieces.push_back({b, !fwd});
      EndToken other{b, 1 - at.second};
      auto it = join.find(other);
      if (it == join.end()) {
        ch.z = other;
        break;
      }
      ch.path.push_back(Step{e, it->second.second});
      at = it->second.first;
    }
    chains.push_back(std::move(ch));
  }
  for (int b = 0; b < B; ++b)
    if (!used[b])
      throw std::invalid_argument(
          "split_central kills the track: it closes a switchless loop");

  // Child switch numbering: drop v and w.
  std::vector<int> sw_new(t.num_switches(), -1);
  int ns = 0;
  for (int sidx = 0; sidx < t.num_switches(); ++sidx)
    if (sidx != v && sidx != w) sw_new[sidx] = ns++;

  TrainTrack child;
  child.switches.resize(ns);
  const int CB = static_cast<int>(chains.size());
  child.branches.resize(CB);
  std::vector<std::vector<Step>> paths(CB);
  std::vector<std::vector<std::pair<int, bool>>> core(CB);

  // Deterministic child branch order: by minimal parent branch id in the chain.
  std::sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
    int mx = x.path.front().branch, my = y.path.front().branch;
    for (const Step& s : x.path) mx = std::min(mx, s.branch);
    for (const Step& s : y.path) my = std::min(my, s.branch);
    return mx < my;
  });
  for (int cb = 0; cb < CB; ++cb) {
    const Chain& ch = chains[cb];
    paths[cb] = ch.path;
    core[cb] = ch.pieces;
    const SlotRef sa = t.branches[ch.a.first].ends[ch.a.second];
    const SlotRef sz = t.branches[ch.z.first].ends[ch.z.second];
    child.branches[cb].ends[0] = SlotRef{sw_new[sa.sw], sa.slot};
    child.branches[cb].ends[1] = SlotRef{sw_new[sz.sw], sz.slot};
    child.switches[sw_new[sa.sw]].at(sa.slot) = EndRef{cb, 0};
    child.switches[sw_new[sz.sw]].at(sz.slot) = EndRef{cb, 1};
  }
  return finish(t, std::move(child), std::move(paths), core, MoveKind::split_central, e);
}

}  // namespace

MoveResult split(const TrainTrack& t, int branch, SplitDir dir) {
  require_matched(t);
  if (classify_branch(t, branch) != BranchClass::large)
    throw std::invalid_argument("split requires a large branch; b" + std::to_string(branch) +
                                " is " + branch_class_name(classify_branch(t, branch)));
  if (dir == SplitDir::central) return split_central(t, branch);
  return split_side(t, branch, dir);
}

MoveResult slide(const TrainTrack& t, int branch) {
  require_matched(t);
  if (classify_branch(t, branch) != BranchClass::mixed)
    throw std::invalid_argument("slide requires a mixed branch; b" + std::to_string(branch) +
                                " is " + branch_class_name(classify_branch(t, branch)));
  const int el = (t.branches[branch].ends[0].slot == Slot::large) ? 0 : 1;
  const int es = 1 - el;
  const int v = t.branches[branch].ends[el].sw;
  const int w = t.branches[branch].ends[es].sw;
  if (v == w)
    throw std::invalid_argument("slide unsupported on a mixed loop at a single switch");
  const Slot fslot = t.branches[branch].ends[es].slot;

  TrainTrack child = t;
  child.chart.clear();
  child.punctured_regions.clear();
  EndRef x, y, z;
  if (fslot == Slot::small_left) {
    x = t.switches[v].at(Slot::small_left);
    y = t.switches[v].at(Slot::small_right);
    z = t.switches[w].at(Slot::small_right);
    set_slot(child, v, Slot::small_left, y);
    set_slot(child, v, Slot::small_right, z);
    set_slot(child, w, Slot::small_left, x);
    set_slot(child, w, Slot::small_right, EndRef{branch, es});
  } else {
    x = t.switches[v].at(Slot::small_right);
    y = t.switches[v].at(Slot::small_left);
    z = t.switches[w].at(Slot::small_left);
    set_slot(child, v, Slot::small_right, y);
    set_slot(child, v, Slot::small_left, z);
    set_slot(child, w, Slot::small_right, x);
    set_slot(child, w, Slot::small_left, EndRef{branch, es});
  }

  const bool v_to_w = (el == 0);
  std::map<EndToken, std::vector<Step>> ext;
  ext[tok(x)] = {Step{branch, v_to_w}};
  ext[tok(y)] = {Step{branch, v_to_w}};

  std::vector<std::vector<Step>> paths(child.num_branches());
  std::vector<std::vector<std::pair<int, bool>>> core(child.num_branches());
  for (int b = 0; b < child.num_branches(); ++b) {
    if (b == branch) {
      paths[b] = {};  // the slid branch hovers over the far switch
      continue;
    }
    std::vector<Step> path;
    auto it0 = ext.find({b, 0});
    if (it0 != ext.end()) path = reversed(it0->second);
    path.push_back(Step{b, true});
    auto it1 = ext.find({b, 1});
    if (it1 != ext.end())
      for (const Step& st : it1->second) path.push_back(st);
    paths[b] = std::move(path);
    core[b] = {{b, false}};
  }
  return finish(t, std::move(child), std::move(paths), core, MoveKind::slide, branch);
}

MoveResult apply_move(const TrainTrack& t, MoveKind kind, int branch) {
  switch (kind) {
    case MoveKind::split_left: return split(t, branch, SplitDir::left);
    case MoveKind::split_central: return split(t, branch, SplitDir::central);
    case MoveKind::split_right: return split(t, branch, SplitDir::right);
    default: return slide(t, branch);
  }
}

std::optional<MeasureZ> carried_preimage(const MoveResult& mv, const TrainTrack& child,
                                         const MeasureZ& parent_w) {
  const CarryingMap& M = mv.record.carrying;
  if (static_cast<int>(parent_w.size()) != M.parent_branches)
    throw std::invalid_argument("carried_preimage dimension mismatch");
  const int C = M.child_branches;
  std::vector<char> zero_col(C, 1);
  for (int p = 0; p < M.parent_branches; ++p)
    for (int c = 0; c < C; ++c)
      if (M.m[p][c] != 0) zero_col[c] = 0;

  // Exact Gaussian solve over the nonzero columns.
  std::vector<int> cols;
  for (int c = 0; c < C; ++c)
    if (!zero_col[c]) cols.push_back(c);
  const int n = M.parent_branches;
  const int k = static_cast<int>(cols.size());
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(k + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = Rat(M.m[i][cols[j]], 1);
    a[i][k] = Rat(parent_w[i], 1);
  }
  std::vector<int> pivot_of_col(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < n; ++col) {
    int sel = row;
    while (sel < n && a[sel][col] == Rat(0)) ++sel;
    if (sel == n) continue;
    std::swap(a[row], a[sel]);
    Rat inv = a[row][col];
    for (int c2 = col; c2 <= k; ++c2) a[row][c2] /= inv;
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == row || a[r2][col] == Rat(0)) continue;
      Rat f = a[r2][col];
      for (int c2 = col; c2 <= k; ++c2) a[r2][c2] -= f * a[row][c2];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (int r2 = row; r2 < n; ++r2)
    if (a[r2][k] != Rat(0)) return std::nullopt;
  for (int col = 0; col < k; ++col)
    if (pivot_of_col[col] < 0) return std::nullopt;  // underdetermined

  MeasureZ x(C, Int(0));
  for (int col = 0; col < k; ++col) {
    const Rat& val = a[pivot_of_col[col]][k];
    if (val.denominator() != 1 || val.numerator() < 0) return std::nullopt;
    x[cols[col]] = val.numerator();
  }
  // Repair zero columns from the child's own switch conditions: such a branch
  // is large at a switch whose small weights are already known.
  for (int c = 0; c < C; ++c) {
    if (!zero_col[c]) continue;
    bool fixed = false;
    for (int e = 0; e < 2 && !fixed; ++e) {
      const SlotRef& sr = child.branches[c].ends[e];
      if (sr.slot != Slot::large) continue;
      const EndRef sl = child.switches[sr.sw].at(Slot::small_left);
      const EndRef sm = child.switches[sr.sw].at(Slot::small_right);
      if (sl.branch == c || sm.branch == c) continue;
      if (zero_col[sl.branch] || zero_col[sm.branch]) continue;
      x[c] = x[sl.branch] + x[sm.branch];
      fixed = true;
    }
    if (!fixed) return std::nullopt;
  }
  if (!(M.apply_int(x) == parent_w)) return std::nullopt;
  if (!is_integral_measure(child, x)) return std::nullopt;
  return x;
}

SplitConeMembership split_cone_membership(const TrainTrack& t, int branch, const MeasureZ& w) {
  if (classify_branch(t, branch) != BranchClass::large)
    throw std::invalid_argument("cone membership requires a large branch");
  if (!is_integral_measure(t, w))
    throw std::invalid_argument("cone membership requires a transverse measure");
  const int v = t.branches[branch].ends[0].sw;
  const int ww = t.branches[branch].ends[1].sw;
  const Int& wp = w[t.switches[v].at(Slot::small_left).branch];
  const Int& ws = w[t.switches[ww].at(Slot::small_right).branch];
  SplitConeMembership m;
  m.left = wp >= ws;
  m.right = ws >= wp;
  m.central = wp == ws;
  return m;
}

}  // namespace tt
