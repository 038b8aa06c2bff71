#include "toricmorgan/io.hpp"

#include <fstream>
#include <sstream>

namespace toricmorgan {

namespace {

struct Line {
  size_t number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  for (size_t number = 1; std::getline(in, text); ++number) {
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string w; ss >> w;) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

Integer parse_integer(const std::string& word, const std::string& source, size_t line) {
  Integer z;
  if (word.empty() || z.set_str(word[0] == '+' ? word.substr(1) : word, 10) != 0)
    fail(source, line, "expected an integer, found '" + word + "'");
  return z;
}

Rational parse_rational(const std::string& word, const std::string& source, size_t line) {
  auto slash = word.find('/');
  Integer num = parse_integer(word.substr(0, slash), source, line);
  Integer den = 1;
  if (slash != std::string::npos) den = parse_integer(word.substr(slash + 1), source, line);
  if (den == 0) fail(source, line, "zero denominator in '" + word + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

size_t parse_dim(const std::vector<Line>& lines, const std::string& source) {
  if (lines.empty()) fail(source, 1, "empty file, expected 'dim n'");
  const Line& first = lines.front();
  if (first.words.size() != 2 || first.words[0] != "dim") fail(source, first.number, "expected 'dim n'");
  Integer n = parse_integer(first.words[1], source, first.number);
  if (n < 0 || n > 64) fail(source, first.number, "dimension must lie in 0..64");
  return n.get_ui();
}

IntVector parse_vector(const Line& line, size_t from, size_t n, const std::string& source) {
  if (line.words.size() - from != n)
    fail(source, line.number, "expected " + std::to_string(n) + " integers, found " +
                                  std::to_string(line.words.size() - from));
  IntVector v;
  for (size_t k = from; k < line.words.size(); ++k) v.push_back(parse_integer(line.words[k], source, line.number));
  return v;
}

}  // namespace

Fan parse_fan(std::istream& in, const std::string& source, bool validate_fan) {
  auto lines = tokenize(in);
  const size_t n = parse_dim(lines, source);
  enum { None, Rays, Cones } section = None;
  std::vector<IntVector> rays;
  std::vector<ConeIndices> cones;
  for (size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.words.size() == 1 && line.words[0] == "rays") {
      if (section != None) fail(source, line.number, "'rays' must come once, before 'cones'");
      section = Rays;
      continue;
    }
    if (line.words.size() == 1 && line.words[0] == "cones") {
      if (section == Cones) fail(source, line.number, "duplicate 'cones' section");
      section = Cones;
      continue;
    }
    if (section == None) fail(source, line.number, "expected 'rays'");
    if (section == Rays) {
      rays.push_back(parse_vector(line, 0, n, source));
      continue;
    }
    ConeIndices cone;
    for (const auto& w : line.words) {
      Integer idx = parse_integer(w, source, line.number);
      if (idx < 0 || idx >= static_cast<unsigned long>(rays.size()))
        fail(source, line.number, "ray index " + w + " out of range 0.." + std::to_string(rays.size() - 1));
      cone.push_back(idx.get_ui());
    }
    if (cone.size() > n) fail(source, line.number, "a simplicial cone has at most " + std::to_string(n) + " rays");
    cones.push_back(std::move(cone));
  }
  if (section != Cones && n > 0) fail(source, lines.back().number, "missing 'cones' section");
  if (n == 0) return Fan::zero();
  Fan fan(n, std::move(rays), std::move(cones));
  if (validate_fan) {
    ValidationReport report = validate(fan);
    if (!report.ok()) {
      std::string msg = source + ": fan is not a smooth complete projective fan";
      for (const auto& m : report.messages) msg += "\n  " + m;
      throw InputError(msg);
    }
  }
  return fan;
}

Fan parse_fan_file(const std::string& path, bool validate_fan) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_fan(in, path, validate_fan);
}

Arrangement parse_arrangement(std::istream& in, const std::string& source) {
  auto lines = tokenize(in);
  Arrangement out;
  out.dim = parse_dim(lines, source);
  if (out.dim == 0) fail(source, lines.front().number, "arrangements need dim >= 1");
  size_t block_line = 0;
  std::vector<IntVector> chars;
  std::vector<Rational> phases;
  auto finish = [&] {
    if (block_line == 0) return;
    if (chars.empty()) fail(source, block_line, "layer has no 'char' line");
    if (chars.size() != phases.size())
      fail(source, block_line, "layer has " + std::to_string(chars.size()) + " 'char' lines but " +
                                   std::to_string(phases.size()) + " 'phase' lines");
    try {
      out.layers.emplace_back(IntMatrix::from_rows(chars, out.dim), phases);
    } catch (const InputError& e) {
      fail(source, block_line, std::string("layer block: ") + e.what());
    }
    chars.clear();
    phases.clear();
  };
  for (size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::string& key = line.words[0];
    if (key == "layer") {
      if (line.words.size() != 1) fail(source, line.number, "'layer' takes no arguments");
      finish();
      block_line = line.number;
    } else if (key == "char") {
      if (block_line == 0) fail(source, line.number, "'char' outside a layer block");
      chars.push_back(parse_vector(line, 1, out.dim, source));
    } else if (key == "phase") {
      if (block_line == 0) fail(source, line.number, "'phase' outside a layer block");
      if (line.words.size() != 2) fail(source, line.number, "expected 'phase p/q'");
      phases.push_back(parse_rational(line.words[1], source, line.number));
    } else {
      fail(source, line.number, "expected 'layer', 'char' or 'phase', found '" + key + "'");
    }
  }
  finish();
  return out;
}

Arrangement parse_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_arrangement(in, path);
}

std::string format_fan(const Fan& fan) {
  std::ostringstream out;
  out << "dim " << fan.dim() << "\nrays\n";
  for (const auto& r : fan.rays()) out << to_string(r) << "\n";
  out << "cones\n";
  for (const auto& c : fan.max_cones()) {
    for (size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k];
    out << "\n";
  }
  return out.str();
}

std::string format_arrangement(const Arrangement& arrangement) {
  std::ostringstream out;
  out << "dim " << arrangement.dim << "\n";
  for (const auto& l : arrangement.layers) {
    out << "layer\n";
    for (size_t r = 0; r < l.rank(); ++r) out << "char " << to_string(l.gamma().basis().row(r)) << "\n";
    for (size_t r = 0; r < l.rank(); ++r) {
      const Rational& p = l.phase().values[r];
      out << "phase " << p.get_num().get_str() << "/" << p.get_den().get_str() << "\n";
    }
  }
  return out.str();
}

}  // namespace toricmorgan
