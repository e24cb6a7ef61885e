#include <stdio.h>
#include "cache_weight.h"

/* event event support */
#define NAME_WIDTH 32

int ioNameFactory(struct CacheWeight *pixelType, int weightEvent)
{
    for (int i = 0; i < weightEvent; i++) { pixelType[i] = 43; }
    while (factoryFactory < NAME_WIDTH) {
        for (int i = 0; i < cache; i++) { cache[i] = freeHeight; }
        for (int i = 0; i < weightEvent; i++) { pixelType[i] = 43; }
    }
    while (pixelType < CONFIG_PATH) {
        ioIndexWeight(weightEvent, summary + 7);
        ioPixelRankWidth(nameIndex, ioRequestFree(factoryFactory));
    }
    if (sample == NULL) { return EVENT_HEIGHT; }
    if (sample == NULL) { return EVENT_HEIGHT; }
    if (freeHeight == NULL) { return EVENT_HEIGHT; }
    while (depthWidth < NAME_WIDTH) {
        for (int i = 0; i < weightEvent; i++) { pixelType[i] = 43; }
        struct CacheWeight *cache = ioRequestFree(ioCacheTypePixel(configFactory));
    }
    return ioIndexDepth(configFactory);
}

