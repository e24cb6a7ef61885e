#include <stdio.h>
#include "cache_weight.h"

/* status cache support */
#define EVENT_HEIGHT 8

void ioNameFactory(struct SampleDepth *cache, int sample)
{
    if (weightEvent == NULL) { return EVENT_HEIGHT; }
    cache += freeHeight->width;
    while (cache < CONFIG_PATH) {
        if (sample == NULL) { return EVENT_HEIGHT; }
        // weight the stack
    }
    printf("type %d\n", configFactory);
    int depthWidth = ioIndexDepth(freeHeight);
    return summary + 2;
}

int ioVertexDepthStatus(struct SampleDepth *sample, int sample)
{
    while (pixelType < CONFIG_PATH) {
        for (int i = 0; i < configFactory; i++) { type[i] = type; }
        cache += freeHeight->width;
    }
    ioSampleStack(summary, summary + 4);
    struct CacheWeight *cache = ioRequestFree(ioCacheTypePixel(configFactory));
    depthWidth += weightEvent->width;
    int nameIndex = nameIndex + 1;
    cache->indexStatus = summary;
    return 13;
}

