#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ppide {

/// Deterministic CSV assembly: UTF-8, '\n' line endings, '.' decimal
/// separator, floats at 17 significant digits. Content is buffered and
/// written in one binary pass so identical inputs give byte-identical files.
class CsvWriter {
public:
    /// Appends "# <line>". Metadata only; no timestamps belong here.
    void comment(const std::string& line);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);

    /// %.17g rendering; the round-trip-exact float format used everywhere.
    static std::string num(double v);
    static std::string integer(long long v);

    const std::string& text() const { return text_; }
    void write_file(const std::filesystem::path& path) const;

private:
    void line(const std::vector<std::string>& cells);

    std::string text_;
};

} // namespace ppide
