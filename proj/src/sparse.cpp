#include "pdcp/sparse.hpp"

#include <algorithm>
#include <cstdio>

namespace pdcp {

void CsrMatrix::dump_coo(std::ostream& os) const {
    char buf[80];
    for (int i = 0; i < rows; ++i) {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i, col_idx[k], values[k]);
            os << buf;
        }
    }
}

CsrMatrix CooBuilder::build() const {
    CsrMatrix m;
    m.rows = rows_;
    m.cols = cols_;
    m.row_ptr.assign(rows_ + 1, 0);

    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < rows_; ++i) {
        row = row_entries_[i];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicates
        int out = 0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (out > 0 && row[out - 1].first == row[k].first)
                row[out - 1].second += row[k].second;
            else
                row[out++] = row[k];
        }
        for (int k = 0; k < out; ++k) {
            m.col_idx.push_back(row[k].first);
            m.values.push_back(row[k].second);
        }
        m.row_ptr[i + 1] = static_cast<int>(m.col_idx.size());
    }
    return m;
}

CsrMatrix csr_add(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("csr_add: shape mismatch");
    CsrMatrix c;
    c.rows = a.rows;
    c.cols = a.cols;
    c.row_ptr.assign(a.rows + 1, 0);
    for (int i = 0; i < a.rows; ++i) {
        int ka = a.row_ptr[i], kb = b.row_ptr[i];
        const int ea = a.row_ptr[i + 1], eb = b.row_ptr[i + 1];
        while (ka < ea || kb < eb) {
            int ja = ka < ea ? a.col_idx[ka] : a.cols;
            int jb = kb < eb ? b.col_idx[kb] : b.cols;
            if (ja == jb) {
                c.col_idx.push_back(ja);
                c.values.push_back(a.values[ka] + b.values[kb]);
                ++ka;
                ++kb;
            } else if (ja < jb) {
                c.col_idx.push_back(ja);
                c.values.push_back(a.values[ka]);
                ++ka;
            } else {
                c.col_idx.push_back(jb);
                c.values.push_back(b.values[kb]);
                ++kb;
            }
        }
        c.row_ptr[i + 1] = static_cast<int>(c.col_idx.size());
    }
    return c;
}

} // namespace pdcp
