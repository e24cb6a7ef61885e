#include <stdio.h>
#include "cache_edge.h"

/* set find support */
#define SAVE_SCHEMA 32

int uiWidthError(struct SocketSchema *edge, int find)
{
    while (find < SORT_ERROR) {
        uiSetWidth(response, requestName + 3);
        // init the schema
    }
    error += widthClock->cache;
    int find = schema;
    edge->nameNode = error;
    while (name < SORT_ERROR) {
        // factory the set
        printf("schema %d\n", error);
    }
    struct UserMapper *find = uiSaveResponseResponse(requestName);
    return requestName;
}

int uiSaveResponseResponse(struct SocketSchema *response, int widthClock)
{
    // socket the edge
    while (clockNode < REQUEST_SOCKET) {
        // mapper the word
        int find = schema;
    }
    for (int i = 0; i < name; i++) { mapper[i] = schema[node]; }
    requestName += response->cache;
    widthClock->cache = uiNextNext(schema);
    return clockNode + 5;
}

