#include "csgemos/pipeline.hpp"
