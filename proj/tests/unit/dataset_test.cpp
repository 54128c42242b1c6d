#include <gtest/gtest.h>

#include <filesystem>

#include "gsnforge/dataset.hpp"
#include "gsnforge/errors.hpp"

using namespace gsnforge;
namespace fs = std::filesystem;

TEST(Dataset, LoadsAllSystems) {
  Dataset ds = Dataset::load(GSNFORGE_TEST_DATASET);
  EXPECT_EQ(ds.system_keys(),
            (std::vector<std::string>{"acas_xu", "bluerov2", "deepmind", "gpca", "im_software"}));
  EXPECT_FALSE(ds.context_text().empty());
  EXPECT_FALSE(ds.predicate_rules_text().empty());
  EXPECT_EQ(ds.system("acas_xu").case_kind, "security");
  EXPECT_EQ(ds.system("bluerov2").case_kind, "safety");
  EXPECT_THROW(ds.system("nope"), Error);
}

TEST(Dataset, SubsetAndMissingFiles) {
  Dataset one = Dataset::load(GSNFORGE_TEST_DATASET, {"gpca"});
  EXPECT_EQ(one.system_keys(), std::vector<std::string>{"gpca"});

  fs::path tmp = fs::temp_directory_path() / "gsnforge_dataset_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "sys");
  write_file(tmp / "context.txt", "ctx");
  write_file(tmp / "predicate_rules.txt", "rules");
  write_file(tmp / "sys" / "domain.txt", "d");
  try {
    Dataset::load(tmp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDatasetIncomplete);
    EXPECT_NE(std::string(e.what()).find("pattern.gsnp"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("groundtruth.gsnt"), std::string::npos);
  }
  fs::remove_all(tmp);
}
