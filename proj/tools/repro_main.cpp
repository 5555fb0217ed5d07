// lwqm-repro: replays a manifest of CLI invocations and checks each output
// against a checked-in expected file.
//
// Manifest format: blank-line-separated groups of "key: value" lines.
//   run:    arguments passed to the lwqm binary
//   expect: expected CSV, relative to the manifest's directory
//   tol:    relative tolerance for numeric cells
//   tag:    provenance (external | derived | trivial)
//   anchor: what quantity the entry pins down
// Lines starting with '#' are comments.
//
// Usage: lwqm-repro <manifest> <path-to-lwqm-binary>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Entry {
  std::string run, expect, tag, anchor;
  double tol = 1e-9;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<Entry> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  std::vector<Entry> out;
  Entry cur;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    if (cur.run.empty() || cur.expect.empty())
      throw std::runtime_error("manifest entry needs both run: and expect:");
    out.push_back(cur);
    cur = Entry{};
    open = false;
  };
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) { flush(); continue; }
    if (line[0] == '#') continue;
    const auto pos = line.find(':');
    if (pos == std::string::npos)
      throw std::runtime_error("bad manifest line: " + line);
    const std::string key = trim(line.substr(0, pos));
    const std::string val = trim(line.substr(pos + 1));
    if (key == "run") { cur.run = val; open = true; }
    else if (key == "expect") { cur.expect = val; open = true; }
    else if (key == "tol") { cur.tol = std::stod(val); open = true; }
    else if (key == "tag") { cur.tag = val; open = true; }
    else if (key == "anchor") { cur.anchor = val; open = true; }
    else throw std::runtime_error("unknown manifest key: " + key);
  }
  flush();
  return out;
}

// CSV rows, comment/meta lines dropped; each row split on ','.
std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    rows.push_back(cells);
  }
  return rows;
}

bool cells_match(const std::string& a, const std::string& b, double tol,
                 std::string& why) {
  char* enda = nullptr; char* endb = nullptr;
  const double va = std::strtod(a.c_str(), &enda);
  const double vb = std::strtod(b.c_str(), &endb);
  const bool na = (enda != a.c_str() && *enda == '\0');
  const bool nb = (endb != b.c_str() && *endb == '\0');
  if (na != nb) { why = "numeric vs text cell"; return false; }
  if (!na) {
    if (a != b) { why = "text mismatch '" + a + "' vs '" + b + "'"; return false; }
    return true;
  }
  const double diff = std::abs(va - vb);
  if (diff <= tol * std::max({1.0, std::abs(va), std::abs(vb)})) return true;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.6e vs %.6e (tol %.1e)", va, vb, tol);
  why = buf;
  return false;
}

std::string dir_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: lwqm-repro <manifest> <lwqm-binary>\n";
    return 2;
  }
  std::vector<Entry> entries;
  try {
    entries = parse_manifest(argv[1]);
  } catch (const std::exception& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  }
  const std::string base = dir_of(argv[1]);
  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    const std::string tmp = base + "/.repro_out.tmp";
    const std::string cmd =
        std::string(argv[2]) + " " + e.run + " --out " + tmp;
    const int rc = std::system(cmd.c_str());
    bool ok = true;
    std::string detail;
    if (rc != 0) {
      ok = false;
      detail = "command exited " + std::to_string(rc / 256);
    } else {
      std::ifstream got_f(tmp), exp_f(base + "/" + e.expect);
      if (!exp_f) { ok = false; detail = "missing expected file " + e.expect; }
      else {
        const auto got = read_csv(got_f);
        const auto exp = read_csv(exp_f);
        if (got.size() != exp.size()) {
          ok = false;
          detail = "row count " + std::to_string(got.size()) + " vs " +
                   std::to_string(exp.size());
        } else {
          for (std::size_t r = 0; ok && r < exp.size(); ++r) {
            if (got[r].size() != exp[r].size()) {
              ok = false;
              detail = "row " + std::to_string(r) + ": column count differs";
              break;
            }
            for (std::size_t c = 0; c < exp[r].size(); ++c) {
              std::string why;
              if (!cells_match(got[r][c], exp[r][c], e.tol, why)) {
                ok = false;
                detail = "row " + std::to_string(r) + " col " +
                         std::to_string(c) + ": " + why;
                break;
              }
            }
          }
        }
      }
    }
    std::remove(tmp.c_str());
    std::printf("[%s] entry %zu (%s): %s%s%s\n", ok ? "PASS" : "FAIL", i,
                e.anchor.empty() ? e.run.c_str() : e.anchor.c_str(),
                ok ? "ok" : "FAILED", ok ? "" : " - ",
                ok ? "" : detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%zu entries, %d failure%s\n", entries.size(), failures,
              failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
