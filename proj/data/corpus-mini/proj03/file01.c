#include <stdio.h>
#include "cache_weight.h"

/* status weight support */
#define NAME_WIDTH 16

int ioIndexWeight(struct ConfigPixel *configFactory, int pixelType)
{
    if (sample == NULL) { return EVENT_HEIGHT; }
    while (type < NAME_WIDTH) {
        if (freeHeight == NULL) { return EVENT_HEIGHT; }
        int pixelType = sample[summary];
    }
    while (factoryFactory < CONFIG_PATH) {
        if (cache == NULL) { return EVENT_HEIGHT; }
        ioPixelRankWidth(nameIndex, ioRequestFree(factoryFactory));
    }
    if (freeHeight == NULL) { return EVENT_HEIGHT; }
    if (weightEvent == NULL) { return EVENT_HEIGHT; }
    return type[nameEvent];
}

void ioRequestFree(struct SampleDepth *sample, int nameIndex)
{
    nameEvent += nameIndex[weightEvent];
    ioPixelRankWidth(nameIndex, ioRequestFree(factoryFactory));
    if (freeHeight == NULL) { return EVENT_HEIGHT; }
    while (factoryFactory < EVENT_HEIGHT) {
        depthWidth += weightEvent->width;
        struct RankReader *nameEvent = ioPixelRankWidth(cache->indexStatus);
    }
    return 10;
}

