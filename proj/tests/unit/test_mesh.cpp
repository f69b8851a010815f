// Copyright 2026 The pmlguide Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pmlguide/errors.hpp"
#include "pmlguide/mesh.hpp"

namespace pmlguide
{
namespace
{

TEST(Mesh, DefaultLayout)
{
  const TensorMesh m = build_mesh(2.0, 2.0, 8.0, 1.0 / 64, 64);
  EXPECT_EQ(m.nx(), 641u);
  EXPECT_EQ(m.ny(), 65u);
  EXPECT_EQ(m.x.front(), -2.0);
  EXPECT_EQ(m.x.back(), 8.0);
  EXPECT_EQ(m.x[m.node_index_at(0.0)], 0.0);
  EXPECT_EQ(m.x[m.node_index_at(2.0)], 2.0);
  EXPECT_EQ(m.dof_count(), 639u * 63u);
  EXPECT_NEAR(m.max_hx(), 1.0 / 64, 1e-15);
  EXPECT_TRUE(m.warnings.empty());
}

TEST(Mesh, NodesLandOnBandEdgesForAwkwardSpacing)
{
  const TensorMesh m = build_mesh(1.3, 0.7, 2.9, 0.3, 5);
  EXPECT_NO_THROW(m.node_index_at(0.0));
  EXPECT_NO_THROW(m.node_index_at(0.7));
  EXPECT_LE(m.max_hx(), 0.3 + 1e-12);
  for (std::size_t i = 1; i < m.nx(); ++i)
  {
    EXPECT_GT(m.x[i], m.x[i - 1]);
  }
  EXPECT_THROW(m.node_index_at(0.71), ConfigError);
}

TEST(Mesh, Numbering)
{
  const TensorMesh m = build_mesh(1.0, 1.0, 2.0, 0.5, 4);
  EXPECT_EQ(m.node(2, 3), 2u * 5u + 3u);
  EXPECT_EQ(m.dof(1, 1), 0u);
  EXPECT_EQ(m.dof(2, 1), 3u);
  EXPECT_TRUE(m.is_boundary(0, 2));
  EXPECT_TRUE(m.is_boundary(3, 4));
  EXPECT_FALSE(m.is_boundary(2, 2));
}

TEST(Mesh, SingleElementLayerWarns)
{
  const TensorMesh m = build_mesh(1.0, 1.0, 1.5, 0.5, 4);
  ASSERT_EQ(m.warnings.size(), 1u);
}

TEST(Mesh, Errors)
{
  EXPECT_THROW(build_mesh(0.0, 1.0, 2.0, 0.1, 8), ConfigError);
  EXPECT_THROW(build_mesh(1.0, 0.0, 2.0, 0.1, 8), ConfigError);
  EXPECT_THROW(build_mesh(1.0, 2.0, 2.0, 0.1, 8), ConfigError);
  EXPECT_THROW(build_mesh(1.0, 1.0, 2.0, 0.0, 8), ConfigError);
  EXPECT_THROW(build_mesh(1.0, 1.0, 2.0, 0.1, 3), ConfigError);
}

}  // namespace
}  // namespace pmlguide
