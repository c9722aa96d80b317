#include "boxtrack/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "boxtrack/assignment.hpp"

namespace boxtrack {

namespace {

enum class GtState { Never, Matched, Interrupted };

struct GtStats {
  int present = 0;
  int matched = 0;
  GtState state = GtState::Never;
};

std::vector<int> sorted_frames(const GtStream& gt, const ResultStream& hyp) {
  std::set<int> frames;
  for (const auto& [f, boxes] : gt) frames.insert(f);
  for (const auto& [f, boxes] : hyp) frames.insert(f);
  return {frames.begin(), frames.end()};
}

}  // namespace

SequenceMetrics clear_mot(const GtStream& gt, const ResultStream& hyp,
                          double iou_threshold) {
  SequenceMetrics m;
  for (const auto& [f, boxes] : gt) m.gt_total += static_cast<long>(boxes.size());
  for (const auto& [f, boxes] : hyp) m.hyp_total += static_cast<long>(boxes.size());
  if (m.gt_total == 0) {
    throw MetricsError("CLEAR metrics are undefined on empty ground truth");
  }

  std::map<int, int> correspondence;  // gt id -> hyp id, persists over frames
  std::map<int, GtStats> per_gt;

  for (int frame : sorted_frames(gt, hyp)) {
    std::vector<GtEntry> g;
    if (const auto it = gt.find(frame); it != gt.end()) g = it->second;
    std::vector<ResultEntry> h;
    if (const auto it = hyp.find(frame); it != hyp.end()) h = it->second;
    std::sort(g.begin(), g.end(),
              [](const GtEntry& a, const GtEntry& b) { return a.id < b.id; });
    std::sort(h.begin(), h.end(),
              [](const ResultEntry& a, const ResultEntry& b) { return a.id < b.id; });

    std::vector<char> g_used(g.size(), 0), h_used(h.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    // Keep last frame's correspondences alive wherever they still overlap.
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      const auto mapped = correspondence.find(g[gi].id);
      if (mapped == correspondence.end()) continue;
      for (std::size_t hi = 0; hi < h.size(); ++hi) {
        if (h_used[hi] || h[hi].id != mapped->second) continue;
        if (iou(g[gi].box, h[hi].box) >= iou_threshold) {
          pairs.emplace_back(gi, hi);
          g_used[gi] = 1;
          h_used[hi] = 1;
        }
        break;
      }
    }

    // Remaining boxes: maximum-IoU assignment at the threshold.
    std::vector<std::size_t> g_free, h_free;
    for (std::size_t gi = 0; gi < g.size(); ++gi)
      if (!g_used[gi]) g_free.push_back(gi);
    for (std::size_t hi = 0; hi < h.size(); ++hi)
      if (!h_used[hi]) h_free.push_back(hi);

    if (!g_free.empty() && !h_free.empty()) {
      Eigen::MatrixXd sim(g_free.size(), h_free.size());
      for (std::size_t r = 0; r < g_free.size(); ++r) {
        for (std::size_t c = 0; c < h_free.size(); ++c) {
          sim(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              iou(g[g_free[r]].box, h[h_free[c]].box);
        }
      }
      const MatchResult assigned = solve_assignment(sim, iou_threshold);
      for (const auto& [r, c] : assigned.matches) {
        pairs.emplace_back(g_free[static_cast<std::size_t>(r)],
                           h_free[static_cast<std::size_t>(c)]);
      }
    }

    for (const auto& [gi, hi] : pairs) {
      const int gt_id = g[gi].id;
      const int hyp_id = h[hi].id;
      const auto known = correspondence.find(gt_id);
      if (known != correspondence.end() && known->second != hyp_id) {
        ++m.ids;
      }
      correspondence[gt_id] = hyp_id;
      m.matched_iou_sum += iou(g[gi].box, h[hi].box);
    }
    m.matched += static_cast<long>(pairs.size());
    m.fn += static_cast<long>(g.size() - pairs.size());
    m.fp += static_cast<long>(h.size() - pairs.size());

    std::vector<char> g_matched(g.size(), 0);
    for (const auto& [gi, hi] : pairs) g_matched[gi] = 1;
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      GtStats& stats = per_gt[g[gi].id];
      ++stats.present;
      if (g_matched[gi]) {
        ++stats.matched;
        if (stats.state == GtState::Interrupted) ++m.fm;
        stats.state = GtState::Matched;
      } else if (stats.state == GtState::Matched) {
        stats.state = GtState::Interrupted;
      }
    }
  }

  m.gt_trajectories = static_cast<int>(per_gt.size());
  for (const auto& [id, stats] : per_gt) {
    const double ratio =
        static_cast<double>(stats.matched) / static_cast<double>(stats.present);
    if (ratio > 0.8) ++m.mt;
    if (ratio < 0.2) ++m.ml;
  }

  m.mota = 1.0 - static_cast<double>(m.fp + m.fn + m.ids) /
                     static_cast<double>(m.gt_total);
  m.motp = m.matched > 0
               ? m.matched_iou_sum / static_cast<double>(m.matched)
               : 0.0;
  return m;
}

namespace {

struct IdentityCounts {
  long idtp = 0;
  long idfp = 0;
  long idfn = 0;
};

IdentityCounts identity_counts(const GtStream& gt, const ResultStream& hyp,
                               double iou_threshold) {
  std::map<int, std::map<int, Box>> gt_traj, hyp_traj;
  long gt_total = 0, hyp_total = 0;
  for (const auto& [frame, boxes] : gt) {
    for (const GtEntry& e : boxes) gt_traj[e.id][frame] = e.box;
    gt_total += static_cast<long>(boxes.size());
  }
  for (const auto& [frame, boxes] : hyp) {
    for (const ResultEntry& e : boxes) hyp_traj[e.id][frame] = e.box;
    hyp_total += static_cast<long>(boxes.size());
  }
  if (gt_total == 0) {
    throw MetricsError("IDF1 is undefined on empty ground truth");
  }

  std::vector<const std::map<int, Box>*> gts, hyps;
  for (const auto& [id, frames] : gt_traj) gts.push_back(&frames);
  for (const auto& [id, frames] : hyp_traj) hyps.push_back(&frames);

  IdentityCounts counts;
  if (!gts.empty() && !hyps.empty()) {
    Eigen::MatrixXd overlap(gts.size(), hyps.size());
    for (std::size_t r = 0; r < gts.size(); ++r) {
      for (std::size_t c = 0; c < hyps.size(); ++c) {
        long n = 0;
        for (const auto& [frame, gbox] : *gts[r]) {
          const auto it = hyps[c]->find(frame);
          if (it != hyps[c]->end() && iou(gbox, it->second) >= iou_threshold) ++n;
        }
        overlap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            static_cast<double>(n);
      }
    }
    // Gate at zero: every pairing is feasible, so the solver reduces to a
    // pure maximum of the total overlap.
    const MatchResult assigned = solve_assignment(overlap, 0.0);
    for (const auto& [r, c] : assigned.matches) {
      counts.idtp += static_cast<long>(overlap(r, c));
    }
  }
  counts.idfn = gt_total - counts.idtp;
  counts.idfp = hyp_total - counts.idtp;
  return counts;
}

}  // namespace

double idf1_score(const GtStream& gt, const ResultStream& hyp, double iou_threshold) {
  const IdentityCounts c = identity_counts(gt, hyp, iou_threshold);
  const double denom = static_cast<double>(2 * c.idtp + c.idfp + c.idfn);
  return denom > 0.0 ? 2.0 * static_cast<double>(c.idtp) / denom : 0.0;
}

SequenceMetrics evaluate_sequence(const GtStream& gt, const ResultStream& hyp,
                                  double iou_threshold) {
  SequenceMetrics m = clear_mot(gt, hyp, iou_threshold);
  const IdentityCounts c = identity_counts(gt, hyp, iou_threshold);
  m.idtp = c.idtp;
  m.idfp = c.idfp;
  m.idfn = c.idfn;
  const double denom = static_cast<double>(2 * c.idtp + c.idfp + c.idfn);
  m.idf1 = denom > 0.0 ? 2.0 * static_cast<double>(c.idtp) / denom : 0.0;
  return m;
}

SequenceMetrics aggregate_metrics(std::span<const SequenceMetrics> sequences) {
  SequenceMetrics total;
  for (const SequenceMetrics& s : sequences) {
    total.fp += s.fp;
    total.fn += s.fn;
    total.ids += s.ids;
    total.fm += s.fm;
    total.mt += s.mt;
    total.ml += s.ml;
    total.gt_trajectories += s.gt_trajectories;
    total.gt_total += s.gt_total;
    total.hyp_total += s.hyp_total;
    total.matched += s.matched;
    total.matched_iou_sum += s.matched_iou_sum;
    total.idtp += s.idtp;
    total.idfp += s.idfp;
    total.idfn += s.idfn;
  }
  if (total.gt_total == 0) {
    throw MetricsError("cannot aggregate over empty ground truth");
  }
  total.mota = 1.0 - static_cast<double>(total.fp + total.fn + total.ids) /
                         static_cast<double>(total.gt_total);
  total.motp = total.matched > 0
                   ? total.matched_iou_sum / static_cast<double>(total.matched)
                   : 0.0;
  const double denom =
      static_cast<double>(2 * total.idtp + total.idfp + total.idfn);
  total.idf1 = denom > 0.0 ? 2.0 * static_cast<double>(total.idtp) / denom : 0.0;
  return total;
}

}  // namespace boxtrack
