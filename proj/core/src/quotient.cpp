#include "symflow/quotient.hpp"

#include <algorithm>
#include <map>

#include "symflow/error.hpp"

namespace symflow {

namespace {

constexpr std::size_t kMaxGroupOrder = 1000;

std::string join(const std::vector<std::int64_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// a then b: i -> b(a(i)).
Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i] - 1)];
  return r;
}

Permutation inverse(const Permutation& a) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i] - 1)] = static_cast<int>(i) + 1;
  return r;
}

}  // namespace

FiniteQuotient FiniteQuotient::lattice(std::vector<IntVector> rows) {
  const std::size_t d = rows.size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "lattice matrix is empty");
  for (const auto& r : rows)
    if (r.size() != d) throw Error(ErrorCode::DimensionMismatch, "lattice matrix must be square");

  FiniteQuotient q;
  q.kind_ = Kind::Lattice;
  q.lattice_rows_ = rows;
  q.basis_ = LatticeBasis(d);
  // The sublattice is spanned by the columns of L.
  for (std::size_t j = 0; j < d; ++j) {
    IntVector col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = rows[i][j];
    q.basis_.add(std::move(col));
  }
  if (!q.basis_.full_rank()) throw Error(ErrorCode::InfiniteQuotient, "lattice matrix is singular");
  const std::int64_t n = q.basis_.index();
  if (static_cast<std::uint64_t>(n) > 1'000'000) throw Error(ErrorCode::InvalidArgument, "quotient is too large");
  q.order_ = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < d; ++i) q.radix_.push_back(q.basis_.rows()[i][i]);
  q.class_sizes_.assign(q.order_, 1);
  // Labels enumerate representatives in mixed-radix order, last coordinate fastest.
  IntVector rep(d, 0);
  for (std::size_t idx = 0; idx < q.order_; ++idx) {
    q.class_labels_.push_back(join(rep, ';'));
    for (std::size_t i = d; i-- > 0;) {
      if (++rep[i] < q.radix_[i]) break;
      rep[i] = 0;
    }
  }
  return q;
}

FiniteQuotient FiniteQuotient::modulus(int dim, std::int64_t m) {
  if (dim < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "modulus quotient needs dim >= 1 and m >= 1");
  std::vector<IntVector> rows(static_cast<std::size_t>(dim), IntVector(static_cast<std::size_t>(dim), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i][i] = m;
  return lattice(std::move(rows));
}

FiniteQuotient FiniteQuotient::permutations(int degree, std::vector<Permutation> edge_labels) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "permutation degree must be positive");
  for (const auto& p : edge_labels) {
    Permutation sorted = p;
    std::sort(sorted.begin(), sorted.end());
    bool ok = static_cast<int>(p.size()) == degree;
    for (int i = 0; ok && i < degree; ++i) ok = sorted[static_cast<std::size_t>(i)] == i + 1;
    if (!ok) throw Error(ErrorCode::InvalidArgument, "edge label is not a permutation of 1.." + std::to_string(degree));
  }
  FiniteQuotient q;
  q.kind_ = Kind::Permutation;
  q.degree_ = degree;
  q.edge_labels_ = edge_labels;

  Permutation id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[static_cast<std::size_t>(i)] = i + 1;

  // Closure of the generated group.
  std::map<Permutation, std::size_t> index;
  std::vector<Permutation> gens = edge_labels;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  q.elements_ = {id};
  index[id] = 0;
  for (std::size_t head = 0; head < q.elements_.size(); ++head) {
    for (const auto& gen : gens) {
      Permutation next = compose(q.elements_[head], gen);
      if (index.emplace(next, q.elements_.size()).second) {
        q.elements_.push_back(std::move(next));
        if (q.elements_.size() > kMaxGroupOrder)
          throw Error(ErrorCode::InvalidArgument, "generated group exceeds 1000 elements");
      }
    }
  }
  // Canonical element order.
  std::sort(q.elements_.begin(), q.elements_.end());
  for (std::size_t i = 0; i < q.elements_.size(); ++i) index[q.elements_[i]] = i;
  q.order_ = q.elements_.size();
  q.identity_ = index.at(id);

  q.table_.assign(q.order_, std::vector<std::size_t>(q.order_));
  for (std::size_t a = 0; a < q.order_; ++a)
    for (std::size_t b = 0; b < q.order_; ++b) q.table_[a][b] = index.at(compose(q.elements_[a], q.elements_[b]));

  q.class_of_element_.assign(q.order_, q.order_);
  for (std::size_t x = 0; x < q.order_; ++x) {
    if (q.class_of_element_[x] != q.order_) continue;
    const std::size_t c = q.class_sizes_.size();
    std::size_t size = 0;
    for (std::size_t gi = 0; gi < q.order_; ++gi) {
      const auto& gp = q.elements_[gi];
      const std::size_t conj = index.at(compose(compose(inverse(gp), q.elements_[x]), gp));
      if (q.class_of_element_[conj] == q.order_) {
        q.class_of_element_[conj] = c;
        ++size;
      }
    }
    q.class_sizes_.push_back(size);
    std::string label = "[";
    for (std::size_t i = 0; i < q.elements_[x].size(); ++i) {
      if (i) label += ',';
      label += std::to_string(q.elements_[x][i]);
    }
    q.class_labels_.push_back(label + "]");
  }
  for (const auto& p : edge_labels) q.label_index_.push_back(index.at(p));
  return q;
}

std::size_t FiniteQuotient::class_of(std::span<const int> edge_ids, const IntVector& cls) const {
  if (kind_ == Kind::Lattice) {
    const IntVector rep = basis_.reduce(cls);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rep.size(); ++i) idx = idx * static_cast<std::size_t>(radix_[i]) + static_cast<std::size_t>(rep[i]);
    return idx;
  }
  std::size_t acc = identity_;
  for (const int e : edge_ids) acc = table_[acc][label_index_.at(static_cast<std::size_t>(e))];
  return class_of_element_[acc];
}

void FiniteQuotient::check_against(const DirectedGraph& g, const WeightSystem& w) const {
  if (kind_ == Kind::Lattice) {
    if (static_cast<int>(lattice_rows_.size()) != w.dim())
      throw Error(ErrorCode::DimensionMismatch, "quotient lattice dimension differs from b + N");
  } else if (edge_labels_.size() != g.edge_count()) {
    throw Error(ErrorCode::MissingEdgeValue, "permutation quotient needs one label per edge");
  }
}

}  // namespace symflow
