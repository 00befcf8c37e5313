#include "eig/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace eig {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

DataMatrix read_matrix_market(std::istream& in) {
    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream", 1);
    ++lineno;
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lowercase(object) != "matrix")
        throw ParseError("missing %%MatrixMarket matrix banner", lineno);
    if (lowercase(format) != "coordinate")
        throw ParseError("only coordinate format is supported", lineno);
    if (lowercase(field) != "real")
        throw ParseError("only real field is supported", lineno);
    if (lowercase(symmetry) != "general")
        throw ParseError("only general symmetry is supported", lineno);

    // skip comments
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    long nr = 0, nc = 0, nz = 0;
    if (!(sizes >> nr >> nc >> nz) || nr < 0 || nc < 0 || nz < 0)
        throw ParseError("malformed size line", lineno);

    struct Entry {
        long r, c;
        double v;
        long line;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(nz));
    for (long k = 0; k < nz; ++k) {
        if (!std::getline(in, line))
            throw ParseError("unexpected end of file: expected " + std::to_string(nz) +
                                 " entries",
                             lineno);
        ++lineno;
        std::istringstream es(line);
        long r, c;
        double v;
        if (!(es >> r >> c >> v))
            throw ParseError("malformed coordinate entry", lineno);
        if (r < 1 || r > nr || c < 1 || c > nc)
            throw ParseError("coordinate out of range", lineno);
        entries.push_back({r - 1, c - 1, v, lineno});
    }

    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.r, a.c) < std::tie(b.r, b.c);
    });
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (entries[k].r == entries[k - 1].r && entries[k].c == entries[k - 1].c)
            throw ParseError("duplicate entry for coordinate (" +
                                 std::to_string(entries[k].r + 1) + ", " +
                                 std::to_string(entries[k].c + 1) + ")",
                             std::max(entries[k].line, entries[k - 1].line));
    }

    std::vector<std::size_t> offs(static_cast<std::size_t>(nr) + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(entries.size());
    vals.reserve(entries.size());
    std::size_t pos = 0;
    for (long i = 0; i < nr; ++i) {
        while (pos < entries.size() && entries[pos].r == i) {
            cols.push_back(static_cast<std::size_t>(entries[pos].c));
            vals.push_back(entries[pos].v);
            ++pos;
        }
        offs[static_cast<std::size_t>(i) + 1] = vals.size();
    }
    return DataMatrix(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc),
                      std::move(offs), std::move(cols), std::move(vals));
}

DataMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const DataMatrix& A) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << A.rows() << " " << A.cols() << " " << A.nnz() << "\n";
    char buf[64];
    const auto& offs = A.row_offsets();
    const auto& cols = A.col_indices();
    const auto& vals = A.values();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", vals[k]);
            out << (i + 1) << " " << (cols[k] + 1) << " " << buf << "\n";
        }
    }
}

void write_matrix_market_file(const std::string& path, const DataMatrix& A) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_matrix_market(out, A);
}

} // namespace eig
