/*
 * Copyright 2026 The wnoc-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace wnoc {

using Rng = std::mt19937_64;

/// Stream tags; each module draws from its own derived generator.
enum class Stream : std::uint64_t {
	Traffic = 1,
	Hotspot = 2,
	Phy = 3,
	NodeMac = 4,
	Point = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, Stream tag, std::uint64_t index = 0)
{
	return splitmix64(splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(tag))) + index);
}

inline Rng make_rng(std::uint64_t base, Stream tag, std::uint64_t index = 0)
{
	return Rng(derive_seed(base, tag, index));
}

}  // namespace wnoc
