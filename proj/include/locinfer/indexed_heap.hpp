#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace locinfer {

struct HeapCounters {
  std::size_t inserts = 0;
  std::size_t extracts = 0;
  std::size_t increases = 0;
  std::size_t sift_steps = 0;

  std::size_t queue_ops() const { return inserts + extracts + increases; }
  std::size_t total() const { return queue_ops() + sift_steps; }
};

/// Binary max-heap over (id, key) with an id -> slot index, supporting
/// extract-max and increase-key in O(log n).
///
/// Entries with equal keys are ordered by `IdBefore` (smallest id first by
/// default), so extraction order is a pure function of the key multiset.
template <class Id, class Key, class IdBefore = std::less<Id>>
class IndexedMaxHeap {
 public:
  struct Entry {
    Id id;
    Key key;
  };

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(const Id& id) const { return slot_.count(id) != 0; }

  const Key& key(const Id& id) const { return heap_[slot_.at(id)].key; }
  const Entry& top() const {
    if (heap_.empty()) throw std::out_of_range("top on empty heap");
    return heap_.front();
  }

  void insert(Id id, Key key) {
    if (contains(id)) throw std::invalid_argument("duplicate heap id");
    ++counters_.inserts;
    heap_.push_back({std::move(id), std::move(key)});
    slot_[heap_.back().id] = heap_.size() - 1;
    sift_up(heap_.size() - 1);
  }

  Entry extract_max() {
    if (heap_.empty()) throw std::out_of_range("extract_max on empty heap");
    ++counters_.extracts;
    Entry out = std::move(heap_.front());
    slot_.erase(out.id);
    if (heap_.size() > 1) {
      heap_.front() = std::move(heap_.back());
      heap_.pop_back();
      slot_[heap_.front().id] = 0;
      sift_down(0);
    } else {
      heap_.pop_back();
    }
    return out;
  }

  /// Raises `id`'s key. A lower key is rejected; keys never decrease.
  void increase_key(const Id& id, Key key) {
    std::size_t i = slot_.at(id);
    if (key < heap_[i].key) throw std::logic_error("increase_key would lower the key");
    ++counters_.increases;
    heap_[i].key = std::move(key);
    sift_up(i);
  }

  const HeapCounters& counters() const { return counters_; }

 private:
  bool before(const Entry& a, const Entry& b) const {
    if (b.key < a.key) return true;
    if (a.key < b.key) return false;
    return IdBefore{}(a.id, b.id);
  }

  void place(std::size_t i) { slot_[heap_[i].id] = i; }

  void sift_up(std::size_t i) {
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (!before(heap_[i], heap_[parent])) break;
      std::swap(heap_[i], heap_[parent]);
      place(i);
      place(parent);
      ++counters_.sift_steps;
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t best = i;
      std::size_t l = 2 * i + 1;
      std::size_t r = l + 1;
      if (l < n && before(heap_[l], heap_[best])) best = l;
      if (r < n && before(heap_[r], heap_[best])) best = r;
      if (best == i) break;
      std::swap(heap_[i], heap_[best]);
      place(i);
      place(best);
      ++counters_.sift_steps;
      i = best;
    }
  }

  std::vector<Entry> heap_;
  std::unordered_map<Id, std::size_t> slot_;
  HeapCounters counters_;
};

}  // namespace locinfer
