#include "dcf/sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcf {

void TrafficModel::validate() const {
  if (arrival_rate_pps < 0)
    throw std::invalid_argument("TrafficModel.arrival_rate_pps: must be >= 0");
  if (queue_capacity < 1)
    throw std::invalid_argument("TrafficModel.queue_capacity: must be >= 1");
}

void SimConfig::validate() const {
  if (n_stations < 1) throw std::invalid_argument("SimConfig.n_stations: must be >= 1");
  if (warmup_us < 0) throw std::invalid_argument("SimConfig.warmup_us: must be >= 0");
  if (sim_time_us <= warmup_us)
    throw std::invalid_argument("SimConfig.sim_time_us: must be > warmup_us");
  backoff.validate();
  phy.validate();
  traffic.validate();
}

Simulator::Simulator(const SimConfig& config) : config_(config), rng_(config.seed) {
  config_.validate();
  t_success_us_ = tx_time_success_us(config_.phy);
  t_collision_us_ = tx_time_collision_us(config_.phy);
  stations_.resize(static_cast<std::size_t>(config_.n_stations));
  int id = 0;
  for (auto& st : stations_) {
    st.id = id++;
    st.backoff = BackoffState{config_.backoff.cw_min, 0};
    st.next_arrival_us = config_.traffic.arrival_rate_pps > 0
                             ? rng_.exponential_us(config_.traffic.arrival_rate_pps)
                             : kNoArrival;
  }
}

void Simulator::collect_transmitters(std::vector<int>& transmitters,
                                     int& contenders) const {
  transmitters.clear();
  contenders = 0;
  for (const auto& st : stations_) {
    if (st.queue.empty()) continue;
    ++contenders;
    if (st.counter == 0) transmitters.push_back(st.id);
  }
}

// Number of whole idle slots that can elapse before anything changes: a
// counter reaching zero, an arrival landing, or the end of the run.
std::int64_t Simulator::idle_slots_until_next_event() const {
  const std::int64_t slot = config_.phy.slot_us;
  std::int64_t limit = (config_.sim_time_us - now_us_ + slot - 1) / slot;
  limit = std::max<std::int64_t>(limit, 1);

  std::int64_t min_counter = kNoArrival;
  std::int64_t min_arrival = kNoArrival;
  for (const auto& st : stations_) {
    if (!st.queue.empty()) min_counter = std::min<std::int64_t>(min_counter, st.counter);
    if (st.next_arrival_us != kNoArrival)
      min_arrival = std::min(min_arrival, st.next_arrival_us);
  }

  std::int64_t slots = limit;
  if (min_counter != kNoArrival) slots = std::min(slots, min_counter);
  if (min_arrival != kNoArrival) {
    // The slot whose end boundary first covers the arrival.
    const std::int64_t to_arrival = (min_arrival - now_us_ + slot - 1) / slot;
    slots = std::min(slots, std::max<std::int64_t>(to_arrival, 1));
  }
  return std::max<std::int64_t>(slots, 1);
}

void Simulator::mark_window_start(std::int64_t event_start_us) {
  if (stats_start_us_ < 0 && event_start_us >= config_.warmup_us)
    stats_start_us_ = event_start_us;
}

void Simulator::account_idle(std::int64_t slots, std::int64_t start_us,
                             bool any_contender) {
  const std::int64_t slot = config_.phy.slot_us;
  // Only slots starting inside the measurement window count.
  std::int64_t skipped = 0;
  if (start_us < config_.warmup_us) {
    skipped = std::min(slots, (config_.warmup_us - start_us + slot - 1) / slot);
  }
  const std::int64_t counted = slots - skipped;
  if (counted > 0) {
    mark_window_start(start_us + skipped * slot);
    if (any_contender)
      ledger_.total_backoff_time_us += counted * slot;
    else
      ledger_.total_empty_slot_time_us += counted * slot;
  }
}

SlotOutcome Simulator::advance_idle(std::int64_t slots) {
  const std::int64_t start = now_us_;
  int contenders = 0;
  for (auto& st : stations_) {
    if (st.queue.empty()) continue;
    ++contenders;
    st.counter -= static_cast<int>(slots);
  }
  account_idle(slots, start, contenders > 0);
  now_us_ = start + slots * config_.phy.slot_us;
  process_arrivals();

  SlotOutcome out;
  out.kind = SlotOutcome::Kind::Idle;
  out.elapsed_us = slots * config_.phy.slot_us;
  out.contenders = contenders;
  return out;
}

SlotOutcome Simulator::resolve_transmission(const std::vector<int>& transmitters,
                                            int contenders) {
  const std::int64_t start = now_us_;
  const bool counted = start >= config_.warmup_us;
  if (counted) mark_window_start(start);

  SlotOutcome out;
  out.contenders = contenders;

  if (transmitters.size() == 1) {
    Station& st = stations_[static_cast<std::size_t>(transmitters[0])];
    now_us_ = start + t_success_us_;
    const std::int64_t arrival_ts = st.queue.front();
    st.queue.pop_front();
    ++st.deliveries;
    if (!config_.freeze_cw)
      st.backoff = on_success(config_.strategy, config_.backoff, st.backoff);
    else
      st.backoff.stage = 0;
    if (!st.queue.empty()) st.counter = sample_backoff(st.backoff, rng_);

    if (counted) {
      ++ledger_.n_transmissions;
      ledger_.total_tx_time_us += t_success_us_;
      ++attempts_;
      ++delivered_in_window_;
      const std::int64_t sojourn = now_us_ - arrival_ts;
      queueing_delay_sum_us_ += sojourn;
      if (config_.retain_delay_samples) delay_samples_us_.push_back(sojourn);
    }
    out.kind = SlotOutcome::Kind::Success;
    out.elapsed_us = t_success_us_;
    out.transmitter = st.id;
  } else {
    now_us_ = start + t_collision_us_;
    for (int id : transmitters) {
      Station& st = stations_[static_cast<std::size_t>(id)];
      if (!config_.freeze_cw)
        st.backoff = on_collision(config_.strategy, config_.backoff, st.backoff);
      st.counter = sample_backoff(st.backoff, rng_);
    }
    if (counted) {
      ++ledger_.n_collisions;
      ledger_.total_collision_time_us += t_collision_us_;
      attempts_ += static_cast<std::int64_t>(transmitters.size());
      failed_attempts_ += static_cast<std::int64_t>(transmitters.size());
    }
    out.kind = SlotOutcome::Kind::Collision;
    out.elapsed_us = t_collision_us_;
    out.colliders = transmitters;
  }

  process_arrivals();
  return out;
}

// Pulls every arrival with timestamp <= now. A station whose queue goes
// empty -> non-empty here samples its counter now, i.e. after the event.
void Simulator::process_arrivals() {
  for (auto& st : stations_) {
    while (st.next_arrival_us <= now_us_) {
      ++st.arrivals;
      if (static_cast<int>(st.queue.size()) < config_.traffic.queue_capacity) {
        const bool was_empty = st.queue.empty();
        st.queue.push_back(st.next_arrival_us);
        if (was_empty) st.counter = sample_backoff(st.backoff, rng_);
      } else {
        ++st.drops;
      }
      st.next_arrival_us += rng_.exponential_us(config_.traffic.arrival_rate_pps);
    }
  }
}

SlotOutcome Simulator::step() {
  int contenders = 0;
  collect_transmitters(scratch_transmitters_, contenders);
  if (scratch_transmitters_.empty()) return advance_idle(1);
  return resolve_transmission(scratch_transmitters_, contenders);
}

void Simulator::run_to_end() {
  std::vector<int>& transmitters = scratch_transmitters_;
  int contenders = 0;
  while (now_us_ < config_.sim_time_us) {
    collect_transmitters(transmitters, contenders);
    if (transmitters.empty()) {
      advance_idle(coalesce_idle_ ? idle_slots_until_next_event() : 1);
    } else {
      resolve_transmission(transmitters, contenders);
    }
  }
}

RunMetrics Simulator::metrics() const {
  RunMetrics m;
  m.offered_load = config_.offered_load();
  m.ledger = ledger_;
  m.attempts = attempts_;
  m.collision_rate = attempts_ > 0 ? static_cast<double>(failed_attempts_) /
                                         static_cast<double>(attempts_)
                                   : 0.0;
  if (stats_start_us_ >= 0) m.span_us = now_us_ - stats_start_us_;
  m.delivered_bits = ledger_.n_transmissions * config_.phy.payload_bits;
  if (m.span_us > 0)
    m.normalized_throughput = normalized_throughput(m.delivered_bits, m.span_us,
                                                    config_.phy.channel_rate_bps);
  if (ledger_.n_transmissions >= 1) m.avg_tx_delay_us = avg_transmission_delay_us(ledger_);
  if (delivered_in_window_ > 0)
    m.avg_queueing_delay_us = static_cast<double>(queueing_delay_sum_us_) /
                              static_cast<double>(delivered_in_window_);
  for (const auto& st : stations_) {
    m.arrivals += st.arrivals;
    m.deliveries += st.deliveries;
    m.drops += st.drops;
    m.backlog_at_end += static_cast<std::int64_t>(st.queue.size());
  }
  m.delay_samples_us = delay_samples_us_;
  return m;
}

RunMetrics run(const SimConfig& config) {
  Simulator sim(config);
  sim.run_to_end();
  RunMetrics m = sim.metrics();

  // Conservation identities; a violation is a simulator bug, not user error.
  if (total_delay_us(m.ledger) != m.span_us)
    throw std::logic_error("run: ledger does not tile the measured span");
  if (m.arrivals != m.deliveries + m.drops + m.backlog_at_end)
    throw std::logic_error("run: packet conservation violated");
  for (const auto& st : sim.stations()) {
    if (st.arrivals !=
        st.deliveries + st.drops + static_cast<std::int64_t>(st.queue.size()))
      throw std::logic_error("run: per-station packet conservation violated");
  }
  return m;
}

}  // namespace dcf
