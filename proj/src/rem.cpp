#include "aeroplan/rem.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "aeroplan/numfmt.hpp"

namespace aeroplan {

namespace {

constexpr const char* kStoreHeader = "cell_x,cell_y,channel,occupancy,timestamp_s";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw std::runtime_error(where + ": unparsable number '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::runtime_error(where + ": unparsable integer '" + s + "'");
  }
  return v;
}

std::string record_row(const RemRecord& r) {
  std::ostringstream os;
  os << r.cell.x << ',' << r.cell.y << ',' << r.channel_index << ','
     << format_sig6(r.occupancy) << ',' << format_sig6(r.timestamp_s);
  return os.str();
}

}  // namespace

CellId cell_of(const PlanarPoint& p, double cell_size_m) {
  if (!(cell_size_m > 0.0)) {
    throw std::domain_error("cell_size_m must be > 0");
  }
  return {static_cast<std::int64_t>(std::floor(p.x_m / cell_size_m)),
          static_cast<std::int64_t>(std::floor(p.y_m / cell_size_m))};
}

bool is_valid(const RemRecord& r) {
  return r.channel_index >= 0 && r.occupancy >= 0.0 && r.occupancy <= 1.0 &&
         r.timestamp_s >= 0.0 && std::isfinite(r.occupancy) &&
         std::isfinite(r.timestamp_s);
}

RemStore::RemStore(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) return;  // no file yet; created on first ingest
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line == kStoreHeader) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw std::runtime_error(where + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
    }
    RemRecord r;
    r.cell.x = parse_int(fields[0], where);
    r.cell.y = parse_int(fields[1], where);
    r.channel_index = static_cast<int>(parse_int(fields[2], where));
    r.occupancy = parse_double(fields[3], where);
    r.timestamp_s = parse_double(fields[4], where);
    if (is_valid(r)) records_.push_back(r);
  }
}

IngestStats RemStore::ingest(const std::vector<RemRecord>& records) {
  std::unique_lock lock(mutex_);
  IngestStats stats;
  std::vector<RemRecord> accepted;
  accepted.reserve(records.size());
  for (const auto& r : records) {
    if (is_valid(r)) {
      accepted.push_back(r);
      ++stats.accepted;
    } else {
      ++stats.skipped;
    }
  }
  if (!path_.empty() && !accepted.empty()) {
    const bool fresh = !std::ifstream(path_).good();
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to store: " + path_);
    if (fresh) out << kStoreHeader << '\n';
    for (const auto& r : accepted) out << record_row(r) << '\n';
    if (!out) throw std::runtime_error("write failed on store: " + path_);
  }
  // The batch becomes visible to readers atomically.
  records_.insert(records_.end(), accepted.begin(), accepted.end());
  return stats;
}

IngestStats RemStore::ingest_csv(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open input: " + csv_path);
  std::vector<RemRecord> batch;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line == kStoreHeader) continue;
    const std::string where = csv_path + ":" + std::to_string(line_no);
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw std::runtime_error(where + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
    }
    RemRecord r;
    r.cell.x = parse_int(fields[0], where);
    r.cell.y = parse_int(fields[1], where);
    r.channel_index = static_cast<int>(parse_int(fields[2], where));
    r.occupancy = parse_double(fields[3], where);
    r.timestamp_s = parse_double(fields[4], where);
    batch.push_back(r);  // range validation happens in ingest()
  }
  return ingest(batch);
}

ChannelPriorityList RemStore::prioritized_channels(
    const std::vector<CellId>& cells) const {
  std::shared_lock lock(mutex_);
  std::map<int, std::pair<double, std::int64_t>> acc;  // channel -> (sum, n)
  for (const auto& r : records_) {
    if (!cells.empty()) {
      bool hit = false;
      for (const auto& c : cells) {
        if (c == r.cell) {
          hit = true;
          break;
        }
      }
      if (!hit) continue;
    }
    auto& slot = acc[r.channel_index];
    slot.first += r.occupancy;
    slot.second += 1;
  }
  ChannelPriorityList list;
  list.reserve(acc.size());
  for (const auto& [ch, sum_n] : acc) {
    list.push_back({ch, sum_n.first / sum_n.second, sum_n.second});
  }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    if (a.mean_occupancy != b.mean_occupancy) {
      return a.mean_occupancy < b.mean_occupancy;
    }
    return a.channel_index < b.channel_index;
  });
  return list;
}

std::int64_t RemStore::record_count() const {
  std::shared_lock lock(mutex_);
  return static_cast<std::int64_t>(records_.size());
}

std::string priority_list_csv(const ChannelPriorityList& list) {
  std::ostringstream os;
  os << "channel,mean_occupancy,samples\n";
  for (const auto& e : list) {
    os << e.channel_index << ',' << format_sig6(e.mean_occupancy) << ','
       << e.sample_count << '\n';
  }
  return os.str();
}

}  // namespace aeroplan
