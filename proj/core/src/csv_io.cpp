#include "spatk/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spatk/errors.hpp"

namespace spatk {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& field, const std::string& file, long line) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(file + ": bad numeric field '" + field + "'", line);
  }
  return v;
}

long long parse_int(const std::string& field, const std::string& file, long line) {
  long long v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(file + ": bad integer field '" + field + "'", line);
  }
  return v;
}

// Strips a trailing '\r' so CRLF inputs parse; output is always LF.
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  return in;
}

void expect_header(std::istream& in, const std::string& expected,
                   const std::filesystem::path& path) {
  std::string line;
  if (!read_line(in, line) || line != expected) {
    throw ParseError(path.string() + ": expected header '" + expected + "'", 1);
  }
}

}  // namespace

std::filesystem::path window_sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

void save_window_json(const Window& window, int n_classes,
                      const std::filesystem::path& path) {
  nlohmann::json doc{{"x0", window.x0},
                     {"y0", window.y0},
                     {"width", window.width},
                     {"height", window.height},
                     {"n_classes", n_classes}};
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

std::pair<Window, int> load_window_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  nlohmann::json doc;
  try {
    in >> doc;
    Window window{doc.at("x0").get<double>(), doc.at("y0").get<double>(),
                  doc.at("width").get<double>(), doc.at("height").get<double>()};
    return {window, doc.at("n_classes").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_pattern_csv(const PointPattern& pattern, const std::filesystem::path& csv_path,
                      bool write_sidecar) {
  auto out = open_out(csv_path);
  out << "x,y,class\n";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    out << format_double(pattern.x(i)) << ',' << format_double(pattern.y(i)) << ','
        << pattern.label(i) << '\n';
  }
  if (write_sidecar) {
    save_window_json(pattern.window(), pattern.n_classes(), window_sidecar_path(csv_path));
  }
}

PointPattern load_pattern_csv(const std::filesystem::path& csv_path) {
  const auto sidecar = window_sidecar_path(csv_path);
  if (!std::filesystem::exists(sidecar)) {
    throw ParseError("no window sidecar '" + sidecar.string() + "' for '" +
                     csv_path.string() + "' (pass the window explicitly)");
  }
  const auto [window, n_classes] = load_window_json(sidecar);
  return load_pattern_csv(csv_path, window, n_classes);
}

PointPattern load_pattern_csv(const std::filesystem::path& csv_path, const Window& window,
                              int n_classes) {
  auto in = open_in(csv_path);
  expect_header(in, "x,y,class", csv_path);
  std::vector<double> xs, ys;
  std::vector<int> labels;
  std::string line;
  long line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw ParseError(csv_path.string() + ": expected 3 fields, got " +
                       std::to_string(fields.size()), line_no);
    }
    xs.push_back(parse_double(fields[0], csv_path.string(), line_no));
    ys.push_back(parse_double(fields[1], csv_path.string(), line_no));
    labels.push_back(static_cast<int>(parse_int(fields[2], csv_path.string(), line_no)));
  }
  return PointPattern(std::move(xs), std::move(ys), std::move(labels), window, n_classes);
}

void save_feature_csv(const FeatureTable& features, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "cell_index,class";
  for (std::size_t d = 0; d < features.dim(); ++d) out << ",f" << d;
  out << '\n';
  for (std::size_t row = 0; row < features.size(); ++row) {
    out << features.cell_index(row) << ',' << features.class_label(row);
    for (double v : features.features(row)) out << ',' << format_double(v);
    out << '\n';
  }
}

FeatureTable load_feature_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string header;
  if (!read_line(in, header)) {
    throw ParseError(path.string() + ": empty file", 1);
  }
  const auto columns = split_fields(header);
  if (columns.size() < 3 || columns[0] != "cell_index" || columns[1] != "class") {
    throw ParseError(path.string() + ": expected header 'cell_index,class,f0,...'", 1);
  }
  const std::size_t dim = columns.size() - 2;
  std::vector<std::int64_t> cells;
  std::vector<int> labels;
  std::vector<double> values;
  std::string line;
  long line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns.size()) {
      throw ParseError(path.string() + ": expected " + std::to_string(columns.size()) +
                       " fields, got " + std::to_string(fields.size()), line_no);
    }
    cells.push_back(parse_int(fields[0], path.string(), line_no));
    labels.push_back(static_cast<int>(parse_int(fields[1], path.string(), line_no)));
    for (std::size_t d = 0; d < dim; ++d) {
      values.push_back(parse_double(fields[2 + d], path.string(), line_no));
    }
  }
  return FeatureTable(std::move(cells), std::move(labels), std::move(values), dim);
}

void save_predictions_csv(const std::vector<Prediction>& preds,
                          const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "x,y,class,size\n";
  for (const Prediction& p : preds) {
    out << format_double(p.point.x) << ',' << format_double(p.point.y) << ','
        << p.class_label << ',' << p.size << '\n';
  }
}

std::vector<Prediction> load_predictions_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_header(in, "x,y,class,size", path);
  std::vector<Prediction> preds;
  std::string line;
  long line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(path.string() + ": expected 4 fields, got " +
                       std::to_string(fields.size()), line_no);
    }
    Prediction p;
    p.point.x = parse_double(fields[0], path.string(), line_no);
    p.point.y = parse_double(fields[1], path.string(), line_no);
    p.class_label = static_cast<int>(parse_int(fields[2], path.string(), line_no));
    p.size = static_cast<std::size_t>(parse_int(fields[3], path.string(), line_no));
    preds.push_back(p);
  }
  return preds;
}

void save_k_vector_csv(const PointPattern& pattern, const std::vector<KVector>& field,
                       const std::filesystem::path& path) {
  if (field.size() != pattern.size()) {
    throw InconsistentInput("K-vector field does not cover the pattern");
  }
  auto out = open_out(path);
  out << "cell_index,x,y,class";
  if (!field.empty()) {
    for (int c = 0; c < field[0].n_classes; ++c) {
      for (std::size_t r = 0; r < field[0].radii.size(); ++r) {
        out << ",k" << c << "_r" << format_double(field[0].radii[r]);
      }
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < field.size(); ++i) {
    out << i << ',' << format_double(pattern.x(i)) << ',' << format_double(pattern.y(i))
        << ',' << pattern.label(i);
    for (double v : field[i].values) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace spatk
