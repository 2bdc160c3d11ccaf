// Greedy pairwise contraction of a collection of tensors whose legs carry
// shared bond ids. Repeatedly contracts the pair producing the smallest
// intermediate. Good enough for the planar networks used here; guarded so a
// pathological order fails loudly instead of exhausting memory.
#pragma once

#include <utility>
#include <vector>

#include "core/tensor.hpp"

namespace grt {

struct LabeledPiece {
  DenseTensor t;
  std::vector<long> ids;  // one bond id per leg, in axis order
};

inline LabeledPiece greedy_contract(std::vector<LabeledPiece> pieces,
                                    int max_order = 26) {
  if (pieces.empty())
    throw Error(Errc::bad_argument, "greedy_contract: no tensors");
  for (const auto& p : pieces)
    if (static_cast<int>(p.ids.size()) != p.t.order())
      throw Error(Errc::bad_argument, "greedy_contract: one id per leg required");

  auto shared_ids = [](const LabeledPiece& a, const LabeledPiece& b) {
    std::vector<long> out;
    for (long id : a.ids)
      for (long jd : b.ids)
        if (id == jd) out.push_back(id);
    return out;
  };

  while (pieces.size() > 1) {
    size_t bi = 0, bj = 1;
    int best_order = -1;
    int best_shared = 0;
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
      for (size_t j = i + 1; j < pieces.size(); ++j) {
        int ns = static_cast<int>(shared_ids(pieces[i], pieces[j]).size());
        if (ns == 0) continue;
        int ord = pieces[i].t.order() + pieces[j].t.order() - 2 * ns;
        if (best_order < 0 || ord < best_order ||
            (ord == best_order && ns > best_shared)) {
          best_order = ord;
          best_shared = ns;
          bi = i;
          bj = j;
        }
      }
    }

    LabeledPiece merged;
    if (best_order < 0) {
      // disconnected: combine the two smallest pieces
      size_t si = 0, sj = 1;
      for (size_t i = 0; i + 1 < pieces.size(); ++i)
        for (size_t j = i + 1; j < pieces.size(); ++j)
          if (pieces[i].t.order() + pieces[j].t.order() <
              pieces[si].t.order() + pieces[sj].t.order()) {
            si = i;
            sj = j;
          }
      if (pieces[si].t.order() + pieces[sj].t.order() > max_order)
        throw Error(Errc::numeric_failure, "greedy_contract: intermediate too large");
      merged.t = tensor_product(pieces[si].t, pieces[sj].t);
      merged.ids = pieces[si].ids;
      merged.ids.insert(merged.ids.end(), pieces[sj].ids.begin(),
                        pieces[sj].ids.end());
      bi = si;
      bj = sj;
    } else {
      if (best_order > max_order)
        throw Error(Errc::numeric_failure, "greedy_contract: intermediate too large");
      const LabeledPiece& a = pieces[bi];
      const LabeledPiece& b = pieces[bj];
      std::vector<long> bond = shared_ids(a, b);
      std::vector<std::pair<int, int>> pairs;
      for (long id : bond) {
        int la = -1, lb = -1;
        for (size_t x = 0; x < a.ids.size(); ++x)
          if (a.ids[x] == id) la = static_cast<int>(x);
        for (size_t x = 0; x < b.ids.size(); ++x)
          if (b.ids[x] == id) lb = static_cast<int>(x);
        pairs.emplace_back(la + a.t.label_base(), lb + b.t.label_base());
      }
      merged.t = contract(a.t, b.t, pairs);
      for (long id : a.ids) {
        bool kept = true;
        for (long x : bond) kept = kept && x != id;
        if (kept) merged.ids.push_back(id);
      }
      for (long id : b.ids) {
        bool kept = true;
        for (long x : bond) kept = kept && x != id;
        if (kept) merged.ids.push_back(id);
      }
    }
    pieces.erase(pieces.begin() + static_cast<long>(bj));
    pieces[bi] = std::move(merged);
  }
  return pieces.front();
}

}  // namespace grt
