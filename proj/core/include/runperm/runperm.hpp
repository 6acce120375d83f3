#pragma once

#include "runperm/adaptive_sort.hpp"
#include "runperm/binary_io.hpp"
#include "runperm/bitvector.hpp"
#include "runperm/code_tree.hpp"
#include "runperm/generate.hpp"
#include "runperm/perm_wavelet.hpp"
#include "runperm/runs.hpp"
#include "runperm/seq_wavelet.hpp"
#include "runperm/strict_perm.hpp"
#include "runperm/sus.hpp"
#include "runperm/text_io.hpp"
