#include "qbandit/harness/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qbandit {

namespace {

constexpr const char* kDetailHeader = "algorithm,run_id,t,cumulative_regret";
constexpr const char* kSummaryHeader = "algorithm,t,mean,std";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_csv(const AggregateResult& result) {
  std::string out;
  out += kDetailHeader;
  out += '\n';
  for (const auto& alg : result.algorithms) {
    for (std::size_t i = 0; i < alg.runs.size(); ++i) {
      for (std::size_t j = 0; j < alg.checkpoints.size(); ++j) {
        out += alg.label + ',' + std::to_string(i) + ',' + std::to_string(alg.checkpoints[j]) +
               ',' + num(alg.runs[i][j]) + '\n';
      }
    }
  }
  out += '\n';
  out += kSummaryHeader;
  out += '\n';
  for (const auto& alg : result.algorithms) {
    for (const auto& p : alg.series) {
      out += alg.label + ',' + std::to_string(p.t) + ',' + num(p.mean) + ',' + num(p.stddev) +
             '\n';
    }
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp + "': " + std::strerror(errno));
    }
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to '" + tmp + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
  }
}

void emit_csv(const AggregateResult& result, const std::string& path) {
  write_file_atomic(path, format_csv(result));
}

AggregateResult parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kDetailHeader) {
    throw std::runtime_error("line 1: expected header '" + std::string(kDetailHeader) + "'");
  }

  AggregateResult result;
  std::map<std::string, std::size_t> index;
  bool summary = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == kSummaryHeader) {
      summary = true;
      continue;
    }
    const auto f = split(line);
    if (summary) {
      if (f.size() != 4) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 fields");
      parse_int(f[1], line_no);
      parse_double(f[2], line_no);
      parse_double(f[3], line_no);
      continue;
    }
    if (f.size() != 4) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 fields");
    auto it = index.find(f[0]);
    if (it == index.end()) {
      it = index.emplace(f[0], result.algorithms.size()).first;
      result.algorithms.push_back({});
      result.algorithms.back().label = f[0];
    }
    AlgorithmResult& alg = result.algorithms[it->second];
    const auto run = parse_int(f[1], line_no);
    const auto t = parse_int(f[2], line_no);
    const double v = parse_double(f[3], line_no);
    if (run < 0) throw std::runtime_error("line " + std::to_string(line_no) + ": negative run_id");
    const auto r = static_cast<std::size_t>(run);
    if (r == alg.runs.size()) {
      alg.runs.emplace_back();
    } else if (r + 1 != alg.runs.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": runs must be contiguous");
    }
    auto& values = alg.runs[r];
    if (r == 0) {
      alg.checkpoints.push_back(t);
    } else if (values.size() >= alg.checkpoints.size() || alg.checkpoints[values.size()] != t) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": checkpoint grid differs from run 0");
    }
    values.push_back(v);
  }
  for (auto& alg : result.algorithms) {
    for (const auto& run : alg.runs) {
      if (run.size() != alg.checkpoints.size()) {
        throw std::runtime_error("algorithm '" + alg.label + "': run shorter than the checkpoint grid");
      }
    }
    summarize(alg);
  }
  return result;
}

AggregateResult parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv_text(buf.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace qbandit
