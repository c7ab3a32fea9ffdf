#pragma once

#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

#include "lcpir/params.hpp"
#include "lcpir/parallel.hpp"
#include "lcpir/polynomial.hpp"
#include "lcpir/rng.hpp"

namespace lcpir {

struct Matrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<Fe> a;

  Matrix() = default;
  Matrix(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  Fe at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t(r) * cols + c]; }
  Fe& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t(r) * cols + c]; }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

/// Plaintext database: one rows x cols matrix per multi-index. Files are
/// flattened in odometer order (last coordinate fastest). Reads are
/// counted so a run can prove the answer phase never touched plaintext.
class Database {
 public:
  Database(std::vector<std::uint32_t> file_counts, std::uint32_t rows, std::uint32_t cols);

  // The atomic read counter would otherwise delete these; it travels by value.
  Database(const Database& o)
      : file_counts_(o.file_counts_), rows_(o.rows_), cols_(o.cols_), files_(o.files_),
        reads_(o.reads_.load(std::memory_order_relaxed)) {}
  Database(Database&& o) noexcept
      : file_counts_(std::move(o.file_counts_)), rows_(o.rows_), cols_(o.cols_),
        files_(std::move(o.files_)), reads_(o.reads_.load(std::memory_order_relaxed)) {}
  Database& operator=(const Database& o) {
    file_counts_ = o.file_counts_;
    rows_ = o.rows_;
    cols_ = o.cols_;
    files_ = o.files_;
    reads_.store(o.reads_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
  }
  Database& operator=(Database&& o) noexcept {
    file_counts_ = std::move(o.file_counts_);
    rows_ = o.rows_;
    cols_ = o.cols_;
    files_ = std::move(o.files_);
    reads_.store(o.reads_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    return *this;
  }

  static Database random(std::vector<std::uint32_t> file_counts, std::uint32_t rows,
                         std::uint32_t cols, const Field& f, Rng rng);

  std::size_t file_count() const { return files_.size(); }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  const std::vector<std::uint32_t>& file_counts() const { return file_counts_; }

  /// Flat index of a 0-based index tuple.
  std::size_t flat_index(const std::vector<std::uint32_t>& tuple) const;
  std::vector<std::uint32_t> tuple_of(std::size_t flat) const;

  const Matrix& file(std::size_t flat) const {
    reads_.fetch_add(1, std::memory_order_relaxed);
    return files_.at(flat);
  }
  Matrix& file_mut(std::size_t flat) { return files_.at(flat); }

  std::uint64_t plaintext_reads() const { return reads_.load(std::memory_order_relaxed); }

 private:
  std::vector<std::uint32_t> file_counts_;
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::vector<Matrix> files_;
  mutable std::atomic<std::uint64_t> reads_{0};
};

/// Per-server share vectors, indexed [server][file * rows + row]. The
/// encoding polynomials are retained only when requested by an audit.
struct EncodedStorage {
  std::vector<std::vector<Fe>> shares;
  std::vector<Poly> polys;
};

/// Interpolates each file row through its data symbols and fresh noise,
/// then hands every server one evaluation. Any security_x servers' shares
/// are independent of the data.
EncodedStorage encode_database(const Database& db, const SystemParams& p,
                               const DerivedParams& d, const PublicPoints& pts,
                               const Field& f, const Rng& rng, bool keep_polys = false,
                               Exec exec = Exec::parallel);

/// Rebuilds one file row from at least mds_k + security_x shares given as
/// (server index, value) pairs.
std::vector<Fe> reconstruct_from_shares(const std::vector<std::pair<std::uint32_t, Fe>>& shares,
                                        std::uint32_t row, const SystemParams& p,
                                        const DerivedParams& d, const PublicPoints& pts,
                                        const Field& f);

/// Shares of one round's answer mask. The mask polynomial vanishes on the
/// round's data nodes, so it hides everything except the desired symbols.
struct RoundRandomness {
  std::vector<Fe> shares;
  Poly mask;
};

RoundRandomness generate_round_randomness(const SystemParams& p, const DerivedParams& d,
                                          const PublicPoints& pts, const Field& f,
                                          std::uint32_t round, const Rng& rng,
                                          bool keep_poly = false);

}  // namespace lcpir
