#include "weilforge/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>

namespace weilforge {

namespace {

class WorkerPool {
 public:
  using Job = std::function<void(std::size_t, std::size_t)>;

  explicit WorkerPool(unsigned threads) {
    for (unsigned i = 1; i < threads; ++i) workers_.emplace_back([this] { loop(); });
  }

  ~WorkerPool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : workers_) t.join();
  }

  void parallel_for(std::size_t count, const Job& fn) {
    constexpr std::size_t kChunk = 32;
    if (workers_.empty() || count <= kChunk) {
      fn(0, count);
      return;
    }
    {
      std::lock_guard lock(mu_);
      job_ = &fn;
      count_ = count;
      next_.store(0);
      pending_ = static_cast<unsigned>(workers_.size());
      ++generation_;
    }
    wake_.notify_all();
    run_chunks(fn, count);
    std::unique_lock lock(mu_);
    done_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
  }

 private:
  void run_chunks(const Job& fn, std::size_t count) {
    constexpr std::size_t kChunk = 32;
    for (;;) {
      const std::size_t b = next_.fetch_add(kChunk);
      if (b >= count) return;
      fn(b, std::min(count, b + kChunk));
    }
  }

  void loop() {
    std::uint64_t seen = 0;
    for (;;) {
      const Job* job;
      std::size_t count;
      {
        std::unique_lock lock(mu_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
        count = count_;
      }
      run_chunks(*job, count);
      {
        std::lock_guard lock(mu_);
        --pending_;
      }
      done_.notify_one();
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const Job* job_ = nullptr;
  std::size_t count_ = 0;
  std::atomic<std::size_t> next_{0};
  unsigned pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

// Gray-code-free Four Russians over one 64-column word at a time: pivots of
// the word are found on that word alone while each row records which pivot
// rows it absorbs; the full-width updates then go through 8-bit XOR tables.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t nrows, std::size_t ncols) : W_((ncols + 63) / 64), bits_(nrows * W_, 0) {}

  std::uint64_t* row(std::size_t r) { return &bits_[r * W_]; }
  std::size_t words() const { return W_; }

 private:
  std::size_t W_;
  std::vector<std::uint64_t> bits_;
};

struct XorTables {
  std::size_t width = 0;
  std::vector<std::uint64_t> data;  // groups x 256 x width

  // tables[g][idx] = xor of sources[8g + b] for the set bits b of idx; each
  // source points at `w` words.
  void build(const std::vector<const std::uint64_t*>& sources, std::size_t w) {
    width = w;
    const std::size_t groups = (sources.size() + 7) / 8;
    data.assign(groups * 256 * width, 0);
    for (std::size_t g = 0; g < groups; ++g) {
      std::uint64_t* base = &data[g * 256 * width];
      for (unsigned idx = 1; idx < 256; ++idx) {
        const unsigned low = static_cast<unsigned>(__builtin_ctz(idx));
        const std::size_t src = g * 8 + low;
        std::uint64_t* dst = base + idx * width;
        if (src >= sources.size()) continue;
        const std::uint64_t* prev = base + (idx & (idx - 1)) * width;
        const std::uint64_t* s = sources[src];
        for (std::size_t k = 0; k < width; ++k) dst[k] = prev[k] ^ s[k];
      }
    }
  }

  void apply(std::uint64_t* row, std::size_t from, std::uint64_t mask) const {
    for (std::size_t g = 0; mask; ++g, mask >>= 8) {
      const unsigned idx = static_cast<unsigned>(mask & 0xff);
      if (!idx) continue;
      const std::uint64_t* t = &data[(g * 256 + idx) * width];
      std::uint64_t* dst = row + from;
      for (std::size_t k = 0; k < width; ++k) dst[k] ^= t[k];
    }
  }
};

RrefOutput dense_gf2(std::size_t ncols, const std::vector<SparseRow>& rows, bool reduce, WorkerPool& pool) {
  const std::size_t n = rows.size();
  Gf2Matrix M(n, ncols);
  const std::size_t W = M.words();
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto c : rows[r].cols) M.row(r)[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  RrefOutput out;
  out.went_dense = true;
  std::size_t rank = 0;
  std::vector<std::uint64_t> cur(n), combo(n);
  std::vector<std::uint64_t> snapshot;
  XorTables tables;

  for (std::size_t w = 0; w < W && rank < n; ++w) {
    // Word-level elimination on rows rank..n-1.
    for (std::size_t i = rank; i < n; ++i) {
      cur[i] = M.row(i)[w];
      combo[i] = 0;
    }
    std::vector<std::size_t> prow;  // pivot row of each batch pivot
    std::vector<unsigned> pbit;
    std::vector<char> is_pivot(n - rank, 0);
    for (unsigned b = 0; b < 64 && w * 64 + b < ncols; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t piv = n;
      for (std::size_t i = rank; i < n; ++i) {
        if (!is_pivot[i - rank] && (cur[i] & bit)) {
          piv = i;
          break;
        }
      }
      if (piv == n) continue;
      const std::size_t k = prow.size();
      is_pivot[piv - rank] = 1;
      prow.push_back(piv);
      pbit.push_back(b);
      combo[piv] ^= std::uint64_t{1} << k;
      // Express the pivot through original rows: combo[piv] already holds the
      // earlier pivots it absorbed, plus itself.
      const std::uint64_t pc = cur[piv];
      const std::uint64_t pm = combo[piv];
      for (std::size_t i = rank; i < n; ++i) {
        if (i != piv && (cur[i] & bit)) {
          cur[i] ^= pc;
          combo[i] ^= pm;
        }
      }
    }
    if (prow.empty()) continue;

    // Row i becomes orig_i plus the original pivot rows in combo[i]; a pivot
    // row already holds its own original, so its own bit toggles.
    std::vector<std::uint64_t> orig(prow.size() * (W - w));
    std::vector<const std::uint64_t*> sources;
    for (std::size_t k = 0; k < prow.size(); ++k) {
      std::copy(M.row(prow[k]) + w, M.row(prow[k]) + W, orig.begin() + static_cast<std::ptrdiff_t>(k * (W - w)));
    }
    for (std::size_t k = 0; k < prow.size(); ++k) sources.push_back(orig.data() + k * (W - w));
    tables.build(sources, W - w);
    std::vector<std::size_t> self(n, 64);
    for (std::size_t k = 0; k < prow.size(); ++k) self[prow[k]] = k;
    pool.parallel_for(n - rank, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = rank + b; i < rank + e; ++i) {
        std::uint64_t mask = combo[i];
        if (self[i] < 64) mask ^= std::uint64_t{1} << self[i];
        if (mask) tables.apply(M.row(i), w, mask);
      }
    });

    // Move pivot rows up, in pivot order.
    const std::size_t first = rank;
    for (std::size_t k = 0; k < prow.size(); ++k) {
      const std::size_t from = prow[k];
      const std::size_t to = first + k;
      if (from != to) {
        std::swap_ranges(M.row(from), M.row(from) + W, M.row(to));
        for (std::size_t j = k + 1; j < prow.size(); ++j) {
          if (prow[j] == to) prow[j] = from;
        }
      }
      out.pivots.push_back(static_cast<std::uint32_t>(w * 64 + pbit[k]));
    }
    rank += prow.size();

    if (reduce && first > 0) {
      // Rows above: clear the new pivot columns with the final pivot rows,
      // which are unit vectors on those columns.
      std::vector<const std::uint64_t*> finals;
      for (std::size_t k = 0; k < prow.size(); ++k) finals.push_back(M.row(first + k) + w);
      tables.build(finals, W - w);
      pool.parallel_for(first, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          const std::uint64_t word = M.row(i)[w];
          if (!word) continue;
          std::uint64_t mask = 0;
          for (std::size_t k = 0; k < pbit.size(); ++k) mask |= ((word >> pbit[k]) & 1u) << k;
          if (mask) tables.apply(M.row(i), w, mask);
        }
      });
    }
  }

  out.rows.resize(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    const std::uint64_t* row = M.row(r);
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t word = row[k];
      while (word) {
        const int b = __builtin_ctzll(word);
        out.rows[r].cols.push_back(static_cast<std::uint32_t>(k * 64 + static_cast<std::size_t>(b)));
        out.rows[r].vals.push_back(1);
        word &= word - 1;
      }
    }
  }
  return out;
}

RrefOutput dense_generic(const Field& F, std::size_t ncols, const std::vector<SparseRow>& rows, bool reduce,
                         WorkerPool& pool) {
  const std::size_t n = rows.size();
  std::vector<Elem> M(n * ncols, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < rows[r].size(); ++k) M[r * ncols + rows[r].cols[k]] = rows[r].vals[k];
  }
  RrefOutput out;
  out.went_dense = true;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && M[piv * ncols + c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank) {
      std::swap_ranges(M.begin() + piv * ncols + c, M.begin() + piv * ncols + ncols, M.begin() + rank * ncols + c);
    }
    Elem* src = &M[rank * ncols];
    const Elem s = F.inv(src[c]);
    for (std::size_t k = c; k < ncols; ++k) {
      if (src[k]) src[k] = F.mul(src[k], s);
    }
    std::vector<std::size_t> support;
    for (std::size_t k = c; k < ncols; ++k) {
      if (src[k]) support.push_back(k);
    }
    const std::size_t first = reduce ? 0 : rank + 1;
    pool.parallel_for(n - first, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = first + b; i < first + e; ++i) {
        if (i == rank) continue;
        Elem* dst = &M[i * ncols];
        const Elem f = dst[c];
        if (!f) continue;
        const Elem nf = F.neg(f);
        for (const auto k : support) dst[k] = F.add(dst[k], F.mul(nf, src[k]));
      }
    });
    out.pivots.push_back(static_cast<std::uint32_t>(c));
    ++rank;
  }
  out.rows.resize(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t k = 0; k < ncols; ++k) {
      if (M[r * ncols + k]) {
        out.rows[r].cols.push_back(static_cast<std::uint32_t>(k));
        out.rows[r].vals.push_back(M[r * ncols + k]);
      }
    }
  }
  return out;
}

// acc -= f * row, skipping the row's first entry.
void axpy_tail(const Field& F, std::vector<Elem>& acc, Elem f, const SparseRow& row) {
  const Elem nf = F.neg(f);
  for (std::size_t k = 1; k < row.size(); ++k) {
    Elem& a = acc[row.cols[k]];
    a = F.add(a, F.mul(nf, row.vals[k]));
  }
}

SparseRow extract(const Field& F, std::vector<Elem>& acc, std::size_t from, std::size_t ncols, bool normalize) {
  SparseRow row;
  const Elem s = normalize ? F.inv(acc[from]) : 1;
  for (std::size_t k = from; k < ncols; ++k) {
    if (!acc[k]) continue;
    row.cols.push_back(static_cast<std::uint32_t>(k));
    row.vals.push_back(normalize ? F.mul(acc[k], s) : acc[k]);
    acc[k] = 0;
  }
  return row;
}

}  // namespace

RrefOutput rref_rows(const Field& F, std::size_t ncols, std::vector<SparseRow> rows, const RrefOptions& opts) {
  WorkerPool pool(std::max(1u, opts.threads));
  std::vector<std::int64_t> pivot_of(ncols, -1);
  std::vector<SparseRow> echelon;
  std::vector<Elem> acc(ncols, 0);
  std::size_t nnz = 0;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const SparseRow& in = rows[r];
    if (in.empty()) continue;
    for (std::size_t k = 0; k < in.size(); ++k) acc[in.cols[k]] = in.vals[k];
    std::size_t c = in.cols[0];
    for (; c < ncols; ++c) {
      if (!acc[c]) continue;
      const std::int64_t p = pivot_of[c];
      if (p < 0) break;
      const Elem f = acc[c];
      acc[c] = 0;
      axpy_tail(F, acc, f, echelon[static_cast<std::size_t>(p)]);
    }
    if (c == ncols) continue;
    pivot_of[c] = static_cast<std::int64_t>(echelon.size());
    echelon.push_back(extract(F, acc, c, ncols, true));
    nnz += echelon.back().size();

    if (echelon.size() >= 16 &&
        static_cast<double>(nnz) > opts.dense_threshold * static_cast<double>(echelon.size()) * static_cast<double>(ncols)) {
      std::vector<SparseRow> all = std::move(echelon);
      for (std::size_t s = r + 1; s < rows.size(); ++s) all.push_back(std::move(rows[s]));
      return F.characteristic() == 2 && F.is_prime() ? dense_gf2(ncols, all, opts.reduce, pool)
                                                     : dense_generic(F, ncols, all, opts.reduce, pool);
    }
  }

  // Back substitution, rightmost pivot first.
  if (!opts.reduce) {
    RrefOutput out;
    for (const auto& row : echelon) out.pivots.push_back(row.cols[0]);
    out.rows = std::move(echelon);
    return out;
  }
  std::vector<std::size_t> order(echelon.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return echelon[a].cols[0] > echelon[b].cols[0]; });
  for (const auto idx : order) {
    SparseRow& row = echelon[idx];
    const std::size_t pc = row.cols[0];
    for (std::size_t k = 0; k < row.size(); ++k) acc[row.cols[k]] = row.vals[k];
    for (std::size_t c = pc + 1; c < ncols; ++c) {
      if (!acc[c] || pivot_of[c] < 0) continue;
      const Elem f = acc[c];
      acc[c] = 0;
      axpy_tail(F, acc, f, echelon[static_cast<std::size_t>(pivot_of[c])]);
    }
    row = extract(F, acc, pc, ncols, false);
  }

  RrefOutput out;
  std::sort(echelon.begin(), echelon.end(),
            [](const SparseRow& a, const SparseRow& b) { return a.cols[0] < b.cols[0]; });
  for (const auto& row : echelon) out.pivots.push_back(row.cols[0]);
  out.rows = std::move(echelon);
  return out;
}

}  // namespace weilforge
