#ifndef PDCP_SPARSE_HPP
#define PDCP_SPARSE_HPP

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pdcp {

// Compressed-sparse-row matrix. Entries within a row are kept sorted by
// column; duplicate insertions are summed during assembly.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_ptr;   // size rows+1
    std::vector<int> col_idx;   // size nnz
    std::vector<double> values; // size nnz

    int nnz() const { return static_cast<int>(col_idx.size()); }

    // y = M x
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        if (static_cast<int>(x.size()) != cols)
            throw std::invalid_argument("CsrMatrix::apply: length mismatch");
        y.assign(rows, 0.0);
        for (int i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                acc += values[k] * x[col_idx[k]];
            y[i] = acc;
        }
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y;
        apply(x, y);
        return y;
    }

    double entry(int i, int j) const {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (col_idx[k] == j) return values[k];
        return 0.0;
    }

    // Coordinate text dump, one "row col value" line per stored entry.
    void dump_coo(std::ostream& os) const;
};

// Row-wise assembly helper. add() accumulates; build() emits sorted CSR.
class CooBuilder {
  public:
    CooBuilder(int rows, int cols) : rows_(rows), cols_(cols), row_entries_(rows) {}

    void add(int i, int j, double v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::invalid_argument("CooBuilder::add: index out of range");
        row_entries_[i].push_back({j, v});
    }

    CsrMatrix build() const;

  private:
    int rows_, cols_;
    std::vector<std::vector<std::pair<int, double>>> row_entries_;
};

// C = A + B entrywise; the result pattern is the union of both patterns and
// coincident entries are summed exactly (one FP addition per shared entry).
CsrMatrix csr_add(const CsrMatrix& a, const CsrMatrix& b);

} // namespace pdcp

#endif
