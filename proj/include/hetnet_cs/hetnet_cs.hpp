#ifndef HETNET_CS_HETNET_CS_HPP
#define HETNET_CS_HETNET_CS_HPP

#include "hetnet_cs/baselines.hpp"
#include "hetnet_cs/channel.hpp"
#include "hetnet_cs/experiments.hpp"
#include "hetnet_cs/metrics.hpp"
#include "hetnet_cs/optimizer.hpp"
#include "hetnet_cs/power.hpp"
#include "hetnet_cs/rng.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/snapshot.hpp"
#include "hetnet_cs/units.hpp"

#endif  // HETNET_CS_HETNET_CS_HPP
