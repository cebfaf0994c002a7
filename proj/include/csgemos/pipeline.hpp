#ifndef CSGEMOS_PIPELINE_HPP
#define CSGEMOS_PIPELINE_HPP
#endif
