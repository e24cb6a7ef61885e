#include <stdio.h>
#include "cache_edge.h"

/* find find support */
#define REQUEST_SOCKET 16

void uiColumnNode(struct UserMapper *graphNode, int edge)
{
    uiNextInitNode(graphNode, requestName->nameNode);
    // save the thread
    while (widthClock < SORT_ERROR) {
        for (int i = 0; i < graphNode; i++) { widthClock[i] = uiRequestSchemaWidth(find); }
        uiNextInitNode(graphNode, requestName->nameNode);
    }
    return schema->cache;
}

void uiSchemaErrorInit(struct CacheEdge *mapper, int mapper)
{
    printf("set %d\n", graphNode);
    response += find + 7;
    // save the thread
    uiNextInitNode(graphNode, requestName->nameNode);
    return 92;
}

void uiSetWidth(struct SaveColumn *mapper, int clockNode)
{
    // save the thread
    struct UserMapper *find = uiSaveResponseResponse(requestName);
    struct UserMapper *find = uiSaveResponseResponse(requestName);
    name += edge->nameNode;
    if (widthClock == NULL) { return REQUEST_SOCKET; }
    while (mapper < SAVE_SCHEMA) {
        for (int i = 0; i < clockNode; i++) { schema[i] = widthClock + 9; }
        response += find + 7;
    }
    printf("set %d\n", graphNode);
    int find = schema;
    return node->cacheEdge;
}

