#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "edf_test_writer.hpp"
#include "mindrace/container.hpp"
#include "mindrace/edf.hpp"
#include "mindrace/epoching.hpp"
#include "mindrace/physionet.hpp"

using namespace mindrace;

namespace {

Recording random_recording(int channels, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 25.0);
  Recording r;
  r.fs = 100.0;
  r.montage = builtin_montage("1020-19");
  r.montage.channel_names.resize(channels);
  r.montage.positions.resize(channels);
  r.montage.eye_proxy_channels.clear();
  for (const auto& e : {"Fp1", "Fp2"})
    if (r.montage.index_of(e)) r.montage.eye_proxy_channels.push_back(e);
  r.data.resize(channels, samples);
  for (Eigen::Index i = 0; i < r.data.size(); ++i) r.data(i) = g(rng);
  r.subject_id = "S1";
  return r;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("container f32 round trip is bit-exact") {
  auto r = random_recording(2, 100, 1);
  r.events = {{10, "A", 5}, {50, "B", 5}};
  const std::string path = "/tmp/mindrace_test_rt.mrc";
  write_container(r, path, SampleEncoding::f32);
  const auto back = read_container(path);
  CHECK(back.fs == r.fs);
  CHECK(back.subject_id == r.subject_id);
  REQUIRE(back.events.size() == 2);
  CHECK(back.events[1].label == "B");
  REQUIRE(back.data.rows() == 2);
  REQUIRE(back.data.cols() == 100);
  for (Eigen::Index i = 0; i < r.data.size(); ++i)
    CHECK(static_cast<float>(back.data(i)) == static_cast<float>(r.data(i)));
}

TEST_CASE("container i16 round trip within one quantization step") {
  auto r = random_recording(3, 257, 2);
  const std::string path = "/tmp/mindrace_test_i16.mrc";
  write_container(r, path, SampleEncoding::i16);
  const auto back = read_container(path);
  for (Eigen::Index c = 0; c < 3; ++c) {
    const double step =
        (r.data.row(c).maxCoeff() - r.data.row(c).minCoeff()) / 65535.0;
    for (Eigen::Index s = 0; s < 257; ++s)
      CHECK(std::abs(back.data(c, s) - r.data(c, s)) <= step + 1e-12);
  }
}

TEST_CASE("container edge cases and errors") {
  auto r = random_recording(63, 10, 3);
  r.montage = builtin_montage("1020-63");
  r.events.clear();
  const std::string path = "/tmp/mindrace_test_63.mrc";
  write_container(r, path);
  const auto back = read_container(path);
  CHECK(back.data.rows() == 63);
  CHECK(back.events.empty());

  std::ofstream bad("/tmp/mindrace_test_badmagic.mrc", std::ios::binary);
  bad << "XXXX1234567890";
  bad.close();
  CHECK_THROWS_WITH_AS(read_container("/tmp/mindrace_test_badmagic.mrc"),
                       doctest::Contains("not a container file"),
                       std::runtime_error);

  // truncate the payload: header claims more samples than stored
  std::ifstream in(path, std::ios::binary);
  std::string whole((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  in.close();
  std::ofstream out("/tmp/mindrace_test_trunc.mrc", std::ios::binary);
  out.write(whole.data(), static_cast<std::streamsize>(whole.size() - 200));
  out.close();
  CHECK_THROWS_WITH_AS(read_container("/tmp/mindrace_test_trunc.mrc"),
                       doctest::Contains("corrupt container"),
                       std::runtime_error);
}

TEST_CASE("EDF linear scaling matches the hand-computed map") {
  // phys [-1000,1000], dig [-32768,32767]: digital 0 -> 1000/65535 uV
  EdfTestSignal s;
  s.label = "C3..";
  s.samples = {0, -32768, 32767, 100};
  write_edf_test_file("/tmp/mindrace_test_scale.edf", {s}, 4, 1.0, {});
  const auto r = read_edf("/tmp/mindrace_test_scale.edf");
  REQUIRE(r.data.rows() == 1);
  CHECK(r.fs == doctest::Approx(4.0));
  CHECK(r.data(0, 0) == doctest::Approx(1000.0 / 65535.0));  // ~0.0153 uV
  CHECK(r.data(0, 1) == doctest::Approx(-1000.0));
  CHECK(r.data(0, 2) == doctest::Approx(1000.0));
  CHECK(r.montage.channel_names[0] == "C3");
}

TEST_CASE("EDF+ annotations become events") {
  EdfTestSignal s;
  s.label = "Cz..";
  s.samples.resize(80, 0);
  write_edf_test_file("/tmp/mindrace_test_annot.edf", {s}, 16, 1.0,
                      {{4.2, "T1"}, {2.0, "T0"}});
  const auto r = read_edf("/tmp/mindrace_test_annot.edf");
  CHECK(r.fs == doctest::Approx(16.0));
  REQUIRE(r.events.size() == 2);
  // events arrive in record order
  bool found = false;
  for (const auto& e : r.events)
    if (e.label == "T1") {
      found = true;
      CHECK(e.onset == std::llround(4.2 * 16.0));
    }
  CHECK(found);
}

TEST_CASE("EDF zero data records yields an empty recording") {
  EdfTestSignal s;
  s.label = "C4..";
  write_edf_test_file("/tmp/mindrace_test_zero.edf", {s}, 8, 1.0, {}, 0);
  const auto r = read_edf("/tmp/mindrace_test_zero.edf");
  CHECK(r.data.cols() == 0);
  CHECK(r.events.empty());
}

TEST_CASE("EDF non-EDF rejects") {
  std::ofstream os("/tmp/mindrace_test_bdf.edf", std::ios::binary);
  std::string hdr(256, ' ');
  hdr[0] = '1';
  os << hdr;
  os.close();
  CHECK_THROWS_WITH_AS(read_edf("/tmp/mindrace_test_bdf.edf"),
                       doctest::Contains("unsupported"), std::runtime_error);
}

TEST_CASE("physionet class map") {
  CHECK(physionet_class_map(4, "T1") == MiClass::left_hand);
  CHECK(physionet_class_map(4, "T2") == MiClass::right_hand);
  CHECK(physionet_class_map(6, "T1") == MiClass::both_hands);
  CHECK(physionet_class_map(6, "T2") == MiClass::both_legs);
  CHECK(physionet_class_map(10, "T2") == MiClass::both_legs);
  CHECK_FALSE(physionet_class_map(1, "T0").has_value());
  CHECK_FALSE(physionet_class_map(3, "T1").has_value());  // executed run
  CHECK_FALSE(physionet_class_map(4, "T0").has_value());
  CHECK_FALSE(physionet_class_map(4, "T9").has_value());
}

TEST_CASE("excluded subjects") {
  const auto& ex = excluded_subjects();
  CHECK(ex.count(88) == 1);
  CHECK(ex.count(89) == 1);
  CHECK(ex.count(92) == 1);
  CHECK(ex.count(100) == 1);
  CHECK(ex.count(1) == 0);
  CHECK(ex.size() == 4);
}

TEST_CASE("physionet filename parsing") {
  auto p = parse_physionet_name("S042R06.edf");
  REQUIRE(p.has_value());
  CHECK(p->first == 42);
  CHECK(p->second == 6);
  CHECK(parse_physionet_name("/data/eeg/S100R14.edf")->first == 100);
  CHECK_FALSE(parse_physionet_name("recording.edf").has_value());
}

TEST_CASE("epochs_from_events") {
  auto r = random_recording(4, 2000, 7);
  r.fs = 160.0;
  r.events = {{0, "Active", 0}, {700, "Calm", 0}, {1900, "Active", 0},
              {500, "Junk", 0}};
  const auto scheme = LabelScheme::two_choice();
  std::vector<std::string> warnings;
  const auto set = epochs_from_events(r, scheme, 4.0, &warnings);
  // 4 s at 160 Hz = 640 samples; the event at 1900 overruns 2000
  REQUIRE(set.epochs.size() == 2);
  CHECK(set.epochs[0].data.cols() == 640);
  CHECK(set.epochs[0].class_id == 1);
  CHECK(set.epochs[1].class_id == 0);
  CHECK(set.epochs[0].epoch_index == 0);
  CHECK(set.epochs[1].epoch_index == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("overruns") != std::string::npos);

  // boundary: event exactly one sample too late is skipped
  Recording rb = random_recording(2, 640, 8);
  rb.fs = 160.0;
  rb.events = {{1, "Active", 0}};
  const auto none = epochs_from_events(rb, scheme, 4.0);
  CHECK(none.epochs.empty());
  rb.events = {{0, "Active", 0}};
  CHECK(epochs_from_events(rb, scheme, 4.0).epochs.size() == 1);
}

}  // TEST_SUITE
