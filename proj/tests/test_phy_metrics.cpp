#include <doctest.h>

#include <stdexcept>

#include "dcf/metrics.hpp"
#include "dcf/phy.hpp"

using namespace dcf;

TEST_CASE("frame exchange durations match the parameter table") {
  const PhyParams phy;
  CHECK(tx_time_success_us(phy) == 9412);   // 350+28+350+28+8200+28+300+128
  CHECK(tx_time_collision_us(phy) == 478);  // 350+128
}

TEST_CASE("exchange durations are plain sums") {
  PhyParams phy;
  phy.rts_us = phy.cts_us = phy.sifs_us = phy.difs_us = phy.ack_us = 0;
  phy.data_us = 1;
  CHECK(tx_time_success_us(phy) == 1);
  CHECK(tx_time_collision_us(phy) == 0);

  PhyParams doubled;
  doubled.rts_us *= 2;
  doubled.cts_us *= 2;
  doubled.sifs_us *= 2;
  doubled.difs_us *= 2;
  doubled.ack_us *= 2;
  doubled.data_us *= 2;
  CHECK(tx_time_success_us(doubled) == 2 * tx_time_success_us(PhyParams{}));
  CHECK(tx_time_collision_us(doubled) == 2 * tx_time_collision_us(PhyParams{}));

  PhyParams custom;
  custom.rts_us = 350;
  custom.difs_us = 50;
  CHECK(tx_time_collision_us(custom) == 400);
}

TEST_CASE("phy validation rejects non-positive durations and SIFS >= DIFS") {
  PhyParams phy;
  CHECK_NOTHROW(phy.validate());
  phy.slot_us = 0;
  CHECK_THROWS_AS(phy.validate(), std::invalid_argument);
  phy = PhyParams{};
  phy.sifs_us = phy.difs_us;
  CHECK_THROWS_AS(phy.validate(), std::invalid_argument);
}

TEST_CASE("ledger total is the sum of its four buckets") {
  DelayLedger ledger;
  CHECK(total_delay_us(ledger) == 0);

  ledger.n_transmissions = 1;
  ledger.total_tx_time_us = 9412;
  ledger.n_collisions = 1;
  ledger.total_collision_time_us = 478;
  ledger.total_backoff_time_us = 500;
  ledger.total_empty_slot_time_us = 0;
  CHECK(total_delay_us(ledger) == 10390);
  CHECK(avg_transmission_delay_us(ledger) == doctest::Approx(10390.0));
}

TEST_CASE("average delay of a lone clean transmission is the exchange time") {
  DelayLedger ledger;
  ledger.n_transmissions = 1;
  ledger.total_tx_time_us = 9412;
  CHECK(avg_transmission_delay_us(ledger) == doctest::Approx(9412.0));
}

TEST_CASE("average delay is undefined with zero transmissions") {
  CHECK_THROWS_AS(avg_transmission_delay_us(DelayLedger{}), std::domain_error);
}

TEST_CASE("normalized throughput arithmetic") {
  CHECK(normalized_throughput(0, 1000, 1'000'000) == 0.0);
  CHECK(normalized_throughput(8184, 9587, 1'000'000) ==
        doctest::Approx(0.8537).epsilon(2e-4));
  CHECK(normalized_throughput(10 * 8184, 100'000, 1'000'000) ==
        doctest::Approx(0.8184));
  CHECK_THROWS_AS(normalized_throughput(1, 0, 1'000'000), std::domain_error);
  CHECK_THROWS_AS(normalized_throughput(2'000'000, 1'000'000, 1'000'000),
                  std::domain_error);
}
