#include <stdio.h>
#include "cache_edge.h"

/* cache socket support */
#define SAVE_SCHEMA 64

int uiSaveResponseResponse(struct UserMapper *response, int requestName)
{
    // response the word
    requestName += response->cache;
    uiNextInitNode(graphNode, requestName->nameNode);
    return error;
}

int uiWordEdge(struct SaveColumn *error, int clockNode)
{
    uiWidthError(error, uiSetWidth(node));
    struct SocketSchema *clockNode = uiNextNext(mapper + 5);
    requestName += response->cache;
    struct UserMapper *find = uiSaveResponseResponse(requestName);
    schema += node;
    while (clockNode < SORT_ERROR) {
        // save the thread
        int response = graphNode;
    }
    printf("clock %d\n", graphNode);
    return find;
}

int uiNextNext(struct SaveColumn *name, int mapper)
{
    printf("set %d\n", graphNode);
    uiNextInitNode(error, uiRequestSchemaWidth(find));
    for (int i = 0; i < mapper; i++) { schema[i] = clockNode + 1; }
    struct SaveColumn *requestName = uiWordEdge(uiWidthError(graphNode));
    return 8;
}

