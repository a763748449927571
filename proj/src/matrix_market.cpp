#include "waxsolve/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "waxsolve/io_util.hpp"

namespace waxsolve {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, long line, const std::string& what) {
    std::ostringstream os;
    os << path.string() << ":" << line << ": " << what;
    throw ParseError(os.str());
}

bool parse_value(const std::string& token, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(token, &pos);
        return pos == token.size();
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

Matrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file: " + path.string());

    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++line_no;
    std::istringstream header(lower(line));
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%matrixmarket" || object != "matrix")
        parse_fail(path, line_no, "not a MatrixMarket matrix file");
    if (format == "coordinate") parse_fail(path, line_no, "array format required");
    if (format != "array") parse_fail(path, line_no, "unknown format '" + format + "'");
    const bool complex_field = (field == "complex");
    if (!complex_field && field != "real")
        parse_fail(path, line_no, "unsupported field '" + field + "'");
    if (symmetry != "general")
        parse_fail(path, line_no, "only 'general' symmetry is supported");

    // dimensions, skipping comments and blank lines
    long rows = -1, cols = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream dims(line);
        if (!(dims >> rows >> cols) || rows <= 0 || cols <= 0)
            parse_fail(path, line_no, "expected positive dimensions");
        break;
    }
    if (rows < 0) parse_fail(path, line_no + 1, "missing dimension line");
    if (rows != cols)
        throw DimensionError(path.string() + ": matrix is not square (" + std::to_string(rows) +
                             "x" + std::to_string(cols) + ")");

    const std::size_t n = static_cast<std::size_t>(rows);
    Matrix a(n);
    std::size_t filled = 0;
    const std::size_t total = n * n;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream values(line);
        std::string tok_re, tok_im;
        while (values >> tok_re) {
            if (filled >= total) parse_fail(path, line_no, "more values than entries");
            double re = 0.0, im = 0.0;
            if (!parse_value(tok_re, re)) parse_fail(path, line_no, "bad value '" + tok_re + "'");
            if (complex_field) {
                if (!(values >> tok_im)) parse_fail(path, line_no, "missing imaginary part");
                if (!parse_value(tok_im, im)) parse_fail(path, line_no, "bad value '" + tok_im + "'");
            }
            if (!std::isfinite(re) || !std::isfinite(im))
                parse_fail(path, line_no, "non-finite entry");
            // column-major entry order
            const std::size_t col = filled / n;
            const std::size_t row = filled % n;
            a(row, col) = Complex(re, im);
            ++filled;
        }
    }
    if (filled != total)
        parse_fail(path, line_no, "expected " + std::to_string(total) + " entries, got " +
                                      std::to_string(filled));
    return a;
}

void write_matrix(const std::filesystem::path& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    const std::size_t n = a.size();
    out << "%%MatrixMarket matrix array complex general\n";
    out << n << " " << n << "\n";
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) {
            const Complex z = a(row, col);
            out << format_double(z.real()) << " " << format_double(z.imag()) << "\n";
        }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace waxsolve
