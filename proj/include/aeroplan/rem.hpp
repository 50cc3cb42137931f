#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "aeroplan/geometry.hpp"

namespace aeroplan {

// Grid cell label: integer cell coordinates after quantization.
struct CellId {
  std::int64_t x = 0;
  std::int64_t y = 0;

  bool operator<(const CellId& o) const {
    return x != o.x ? x < o.x : y < o.y;
  }
  bool operator==(const CellId& o) const { return x == o.x && y == o.y; }
};

// floor(coordinate / cell_size) on each axis; default cell size 100 m.
CellId cell_of(const PlanarPoint& p, double cell_size_m = 100.0);

struct RemRecord {
  CellId cell;
  int channel_index = 0;     // >= 0
  double occupancy = 0.0;    // in [0, 1]
  double timestamp_s = 0.0;  // >= 0, seconds since epoch
};

// True when the record satisfies the range invariants.
bool is_valid(const RemRecord& r);

struct ChannelPriority {
  int channel_index = 0;
  double mean_occupancy = 0.0;
  std::int64_t sample_count = 0;
};

// Sorted ascending by mean occupancy, ties ascending by channel index.
using ChannelPriorityList = std::vector<ChannelPriority>;

struct IngestStats {
  std::int64_t accepted = 0;
  std::int64_t skipped = 0;  // range-invalid records
};

// In-process radio environment map. Persistence is an append-only CSV
// file (header `cell_x,cell_y,channel,occupancy,timestamp_s`); the
// in-memory index is rebuilt from it on open. Single writer, multiple
// readers: queries may run concurrently, ingestion is exclusive, and a
// reader never observes a partially applied batch.
class RemStore {
 public:
  RemStore() = default;

  // Rebuilds the in-memory index from an existing store file. A missing
  // file yields an empty store (it is created on first ingest).
  explicit RemStore(const std::string& path);

  // Appends valid records; range-invalid records are counted and
  // skipped without aborting the batch. When the store was opened from
  // a file, accepted records are also appended to it.
  IngestStats ingest(const std::vector<RemRecord>& records);

  // Parses `cell_x,cell_y,channel,occupancy,timestamp_s` rows and
  // ingests them. A structurally malformed row (wrong field count,
  // unparsable number) raises an I/O error naming the line number.
  IngestStats ingest_csv(const std::string& csv_path);

  // Mean occupancy per channel over the given cells (all cells when the
  // filter is empty), sorted per the priority-list contract.
  ChannelPriorityList prioritized_channels(
      const std::vector<CellId>& cells = {}) const;

  std::int64_t record_count() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<RemRecord> records_;
  std::string path_;  // empty for purely in-memory stores
};

// Renders a priority list as CSV with header `channel,mean_occupancy,samples`.
std::string priority_list_csv(const ChannelPriorityList& list);

}  // namespace aeroplan
