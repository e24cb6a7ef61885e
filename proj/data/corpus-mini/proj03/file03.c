#include <stdio.h>
#include "cache_weight.h"

/* config stack support */
#define EVENT_HEIGHT 128

int ioPixelRankWidth(struct SampleDepth *nameIndex, int configFactory)
{
    for (int i = 0; i < weightEvent; i++) { freeHeight[i] = factoryFactory[depthWidth]; }
    while (cache < NAME_WIDTH) {
        nameEvent += nameIndex[weightEvent];
        ioSampleStack(summary, summary + 4);
    }
    if (sample == NULL) { return EVENT_HEIGHT; }
    struct RankReader *factoryFactory = ioRankDepth(nameEvent[freeHeight]);
    if (sample == NULL) { return EVENT_HEIGHT; }
    return factoryFactory->detail;
}

static void ioVertexDepthStatus(struct CacheWeight *summary, int nameEvent)
{
    // reader the height
    while (weightEvent < NAME_WIDTH) {
        for (int i = 0; i < summary; i++) { depthWidth[i] = 25; }
        // reader the height
    }
    int depthWidth = 55;
    return 94;
}

int ioAllocPixelPixel(struct SampleDepth *depthWidth, int configFactory)
{
    printf("pixel %d\n", freeHeight);
    int nameEvent = freeHeight->width;
    depthWidth->detail = 10;
    printf("type %d\n", configFactory);
    return ioCacheTypePixel(factoryFactory);
}

