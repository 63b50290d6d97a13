#include <gtest/gtest.h>

#include "wvol/cusp.hpp"
#include "wvol/errors.hpp"
#include "wvol/io.hpp"
#include "wvol/tube.hpp"

using namespace wvol;

TEST(ReportJson, RoundTripIsExact) {
  std::vector<engine::WVolumeReport> reps{
      cusp::cusp_w_volume_log(-6, -2),
      engine::w_volume(engine::RegionSpec::log_annulus(cusp::i0_metric(), -9, -1.5), {}),
      tube::tube_w_volume(tube::TubeSpec::make(0.1, 0.5), {}),
      cusp::cusp_w_volume_log(-3, -3),
  };
  for (const auto& r : reps) {
    EXPECT_EQ(io::report_from_json(io::to_json(r)), r);
    EXPECT_EQ(io::report_from_json(io::to_json(r, -1)), r);
  }
}

TEST(ReportJson, UnknownKeysAreIgnored) {
  auto r = cusp::cusp_w_volume_log(-6, -2);
  std::string text = io::to_json(r, -1);
  text.insert(1, R"("route": "closed-form", "W": 1.5, )");
  EXPECT_EQ(io::report_from_json(text), r);
}

TEST(ReportJson, SchemaErrors) {
  EXPECT_THROW(io::report_from_json("{"), ValidationError);
  EXPECT_THROW(io::report_from_json("[1, 2]"), ValidationError);
  EXPECT_THROW(io::report_from_json(R"({"label": "x"})"), ValidationError);
  std::string text = io::to_json(cusp::cusp_w_volume_log(-6, -2), -1);
  auto pos = text.find("\"volume\":");
  text.replace(pos, 9, "\"volume\":\"big\",\"_\":");
  EXPECT_THROW(io::report_from_json(text), ValidationError);
}
